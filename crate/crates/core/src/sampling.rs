//! Seeded samplers for circularly symmetric complex Gaussians and friends.
//!
//! Every sampler takes an explicit seed (or an RNG derived from one), so
//! results are pure functions of their inputs.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};

pub type McRng = ChaCha8Rng;

/// RNG for one independent stream of a seed. Streams never overlap.
pub fn stream_rng(seed: u64, stream: u64) -> McRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One draw of `CN(0, variance)`: real and imaginary parts are independent
/// `N(0, variance / 2)`.
#[inline]
pub fn cgauss<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (0.5 * variance).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(s * re, s * im)
}

/// `|CN(0, mean)|^2`, an exponential variable with the given mean.
#[inline]
pub fn exponential<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> f64 {
    // 1 - u lies in (0, 1]
    let u: f64 = rng.random();
    -mean * (1.0 - u).ln()
}

pub fn sample_cgauss(variance: f64, n: usize, seed: u64) -> Result<Vec<Complex64>> {
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(Error::param(format!("variance must be finite and >= 0, got {variance}")));
    }
    let mut rng = stream_rng(seed, 0);
    Ok((0..n).map(|_| cgauss(&mut rng, variance)).collect())
}

/// Uniformly distributed unit vector in `C^dim`.
pub fn isotropic_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| cgauss(rng, 1.0)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

pub fn sample_isotropic_unit_vector(dim: usize, seed: u64) -> Result<Vec<Complex64>> {
    if dim == 0 {
        return Err(Error::param("dimension must be >= 1"));
    }
    Ok(isotropic_unit_vector(&mut stream_rng(seed, 0), dim))
}

/// Half of a chi-squared variable with `dof` degrees of freedom. For even
/// `dof` this is `Gamma(dof / 2, 1)`, the law of a sum of `dof / 2`
/// independent `|CN(0,1)|^2` terms.
pub fn half_chisq_dist(dof: u32) -> Result<Gamma<f64>> {
    if dof < 2 || dof % 2 != 0 {
        return Err(Error::param(format!("degrees of freedom must be even and >= 2, got {dof}")));
    }
    Gamma::new(f64::from(dof) / 2.0, 1.0).map_err(|e| Error::param(e.to_string()))
}

pub fn sample_half_chisq(dof: u32, n: usize, seed: u64) -> Result<Vec<f64>> {
    let dist = half_chisq_dist(dof)?;
    let mut rng = stream_rng(seed, 0);
    Ok((0..n).map(|_| dist.sample(&mut rng)).collect())
}
