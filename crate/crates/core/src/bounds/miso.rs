//! Conditional entropy excess of a two-input MISO block.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{estimate_mean, Estimate, McConfig};
use crate::sampling::cgauss;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisoReport {
    /// Monte Carlo estimate of `E log2 det(I_T + u u^H + v v^H)`.
    pub mc: Estimate,
    /// `log2((1 + rho11 a1) (1 + rho12 a2))`.
    pub closed_bound: f64,
    /// Additive allowance `2 log2 T` above `closed_bound`.
    pub slack: f64,
    pub within_bound: bool,
}

/// Estimates the log-det excess with `u = sqrt(rho11 a1) X1^H` and
/// `v = sqrt(rho12 a2) X2^H` for i.i.d. `CN(0,1)` rows `X1, X2` of length `T`.
pub fn miso_cond_entropy(
    a1_sq: f64,
    a2_sq: f64,
    rho11_sq: f64,
    rho12_sq: f64,
    t: u32,
    mc: &McConfig,
) -> Result<MisoReport> {
    for (name, v) in [("a1_sq", a1_sq), ("a2_sq", a2_sq), ("rho11_sq", rho11_sq), ("rho12_sq", rho12_sq)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::param(format!("{name} must be finite and >= 0, got {v}")));
        }
    }
    if t < 2 {
        return Err(Error::param("coherence time must be >= 2"));
    }
    let s1 = rho11_sq * a1_sq;
    let s2 = rho12_sq * a2_sq;
    let n = t as usize;
    let est = estimate_mean(mc, |rng| {
        let (mut uu, mut vv) = (0.0, 0.0);
        let mut uv = num_complex::Complex64::new(0.0, 0.0);
        for _ in 0..n {
            let x1 = cgauss(rng, 1.0);
            let x2 = cgauss(rng, 1.0);
            uu += x1.norm_sqr();
            vv += x2.norm_sqr();
            uv += x1 * x2.conj();
        }
        // Sylvester: det(I_T + W W^H) = det(I_2 + W^H W) for W = [u v].
        ((1.0 + s1 * uu) * (1.0 + s2 * vv) - s1 * s2 * uv.norm_sqr()).log2()
    })?;
    let closed_bound = ((1.0 + s1) * (1.0 + s2)).log2();
    let slack = 2.0 * f64::from(t).log2();
    let within_bound = est.mean <= closed_bound + slack + 3.0 * est.std_err;
    Ok(MisoReport { mc: est, closed_bound, slack, within_bound })
}
