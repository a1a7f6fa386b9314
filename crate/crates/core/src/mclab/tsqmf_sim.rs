//! One coherence block of the train-scale quantize-map-forward chain.
//!
//! Quantization is represented by its test channel: the quantized signal is
//! the scaled signal plus an independent draw from the law of the scaled
//! noise.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LinkGains, NetworkParams};
use crate::sampling::{cgauss, stream_rng};

/// `e^{i arg z} + z`, so that `|ghat| = 1 + |z|`. The phasor is 1 at `z = 0`.
pub fn make_ghat(z: Complex64) -> Complex64 {
    let r = z.norm();
    let phasor = if r > 0.0 { z / r } else { Complex64::new(1.0, 0.0) };
    phasor + z
}

/// Relay codeword amplitudes per time-sharing branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TsqmfCoeffs {
    pub a_r10: f64,
    pub a_r11: f64,
    pub a_r20: f64,
    pub a_r21: f64,
}

impl TsqmfCoeffs {
    /// Relay 1 sends at power `c_r12_sq` in branch 0 and full power in branch
    /// 1; relay 2 is on only in branch 0.
    pub fn from_c_r12_sq(c_r12_sq: f64) -> Result<Self> {
        if !(c_r12_sq.is_finite() && c_r12_sq >= 0.0) {
            return Err(Error::param(format!("c_r12_sq must be finite and >= 0, got {c_r12_sq}")));
        }
        let c = TsqmfCoeffs { a_r10: c_r12_sq.sqrt(), a_r11: 1.0, a_r20: 1.0, a_r21: 0.0 };
        c.validate()?;
        Ok(c)
    }

    /// Each branch must respect the unit per-symbol power budget.
    pub fn validate(&self) -> Result<()> {
        for v in [self.a_r10, self.a_r11, self.a_r20, self.a_r21] {
            if !(v.is_finite() && v.abs() <= 1.0) {
                return Err(Error::param(format!("relay amplitude must lie in [-1, 1], got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelayRealization {
    pub g: Complex64,
    pub w_pilot: Complex64,
    pub ghat: Complex64,
    /// Noise on the data symbols.
    pub noise: Vec<Complex64>,
    /// `Y' = (g X + W) / ghat`.
    pub y_scaled: Vec<Complex64>,
    /// Test-channel quantization noise, an independent copy of `W / ghat`.
    pub q: Vec<Complex64>,
    pub y_hat: Vec<Complex64>,
    /// Transmitted block of length `T`.
    pub x_relay: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TsqmfRealization {
    /// 0 with probability `p_lambda`, 1 otherwise.
    pub lambda: u8,
    /// Source data symbols, length `T - 1`.
    pub x_data: Vec<Complex64>,
    pub relays: [RelayRealization; 2],
}

fn cgauss_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| cgauss(rng, 1.0)).collect()
}

fn relay_chain<R: Rng + ?Sized>(rng: &mut R, gain: f64, x: &[Complex64], amp: f64, t: usize) -> RelayRealization {
    let g = cgauss(rng, gain);
    let w_pilot = cgauss(rng, 1.0);
    let ghat = make_ghat(g + w_pilot);
    let noise = cgauss_vec(rng, x.len());
    let y_scaled: Vec<Complex64> = x.iter().zip(&noise).map(|(xs, w)| (g * xs + w) / ghat).collect();
    // Independent copy of W / ghat: fresh fading, pilot noise and data noise.
    let ghat_q = make_ghat(cgauss(rng, gain) + cgauss(rng, 1.0));
    let q: Vec<Complex64> = cgauss_vec(rng, x.len()).into_iter().map(|w| w / ghat_q).collect();
    let y_hat = y_scaled.iter().zip(&q).map(|(y, q)| y + q).collect();
    let x_relay = cgauss_vec(rng, t).into_iter().map(|v| amp * v).collect();
    RelayRealization { g, w_pilot, ghat, noise, y_scaled, q, y_hat, x_relay }
}

/// Draws one block from `rng`.
pub fn draw_tsqmf_block<R: Rng + ?Sized>(
    rng: &mut R,
    gains: &LinkGains,
    t: u32,
    p_lambda: f64,
    coeffs: &TsqmfCoeffs,
) -> TsqmfRealization {
    let t = t as usize;
    let lambda = if rng.random::<f64>() < p_lambda { 0 } else { 1 };
    let x_data = cgauss_vec(rng, t.saturating_sub(1));
    let (a1, a2) = if lambda == 0 { (coeffs.a_r10, coeffs.a_r20) } else { (coeffs.a_r11, coeffs.a_r21) };
    let r1 = relay_chain(rng, gains.sr1, &x_data, a1, t);
    let r2 = relay_chain(rng, gains.sr2, &x_data, a2, t);
    TsqmfRealization { lambda, x_data, relays: [r1, r2] }
}

/// Simulates one block for `params` (which must carry an snr).
pub fn sim_tsqmf_block(params: &NetworkParams, p_lambda: f64, coeffs: &TsqmfCoeffs, seed: u64) -> Result<TsqmfRealization> {
    params.validate()?;
    if !(0.0..=1.0).contains(&p_lambda) {
        return Err(Error::param(format!("p_lambda must lie in [0, 1], got {p_lambda}")));
    }
    if params.coherence < 2 {
        return Err(Error::param("coherence time must be >= 2"));
    }
    coeffs.validate()?;
    let gains = params.gains()?;
    Ok(draw_tsqmf_block(&mut stream_rng(seed, 0), &gains, params.coherence, p_lambda, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghat_examples() {
        assert_eq!(make_ghat(Complex64::new(3.0, 0.0)), Complex64::new(4.0, 0.0));
        assert_eq!(make_ghat(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
        let z = Complex64::new(-0.3, 2.0);
        assert!((make_ghat(z).norm() - (1.0 + z.norm())).abs() < 1e-15);
    }

    #[test]
    fn coeffs_from_c() {
        let c = TsqmfCoeffs::from_c_r12_sq(0.25).unwrap();
        assert_eq!(c.a_r10, 0.5);
        assert!(TsqmfCoeffs::from_c_r12_sq(4.0).is_err());
    }
}
