//! Monte Carlo checks of the expectation bounds used throughout the analysis.

use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{estimate_mean, Estimate, McConfig};
use crate::mclab::report::{LemmaReport, SE_MULTIPLIER};
use crate::sampling::{cgauss, exponential, half_chisq_dist};
use crate::special::{exp_integral_e1, exp_integral_e1_scaled, EULER_GAMMA, LOG2_E};

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be finite and >= 0, got {v}")))
    }
}

/// `E log2(a + b xi)` for exponential `xi` with mean `mu`, against the
/// Jensen upper bound and its Euler-constant lower companion.
pub fn mc_jensen_exponential(a: f64, b: f64, mu: f64, mc: &McConfig) -> Result<LemmaReport> {
    nonnegative("a", a)?;
    positive("b", b)?;
    positive("mu", mu)?;
    let est = estimate_mean(mc, |rng| (a + b * exponential(rng, mu)).log2())?;
    let hi = (a + b * mu).log2();
    Ok(LemmaReport::new("jensen_exponential", est, hi - EULER_GAMMA * LOG2_E, hi, None))
}

/// `E log2(a + b X)` for chi-squared `X` with even `dof`.
pub fn mc_jensen_chisq(a: f64, b: f64, dof: u32, mc: &McConfig) -> Result<LemmaReport> {
    nonnegative("a", a)?;
    positive("b", b)?;
    let dist = half_chisq_dist(dof)?;
    let est = estimate_mean(mc, |rng| (a + 2.0 * b * dist.sample(rng)).log2())?;
    let n = f64::from(dof);
    let hi = (a + b * n).log2();
    let lo = hi - 2.0 * LOG2_E / n + (1.0 + 1.0 / n).log2();
    Ok(LemmaReport::new("jensen_chisq", est, lo, hi, None))
}

/// `E[b / (b + xi)]` for exponential `xi` with mean `mu`. The exact value is
/// `x e^x E1(x)` with `x = b / mu`; the bounds are the logarithmic sandwich
/// `(x/2) ln(1 + 2/x) <= . <= x ln(1 + 1/x)`.
pub fn mc_exp_reciprocal(b: f64, mu: f64, mc: &McConfig) -> Result<LemmaReport> {
    positive("b", b)?;
    positive("mu", mu)?;
    let x = b / mu;
    let exact = x * exp_integral_e1_scaled(x)?;
    let est = estimate_mean(mc, |rng| b / (b + exponential(rng, mu)))?;
    let lo = 0.5 * x * (2.0 / x).ln_1p();
    let hi = x * (1.0 / x).ln_1p();
    Ok(LemmaReport::new("exp_reciprocal", est, lo, hi, Some(exact)))
}

/// Closed-form upper bound on `E[|w|^2 / (1 + |g + w|^2)]` for
/// `g ~ CN(0, rho_sq)`, `w ~ CN(0, 1)`, assembled from the three regions
/// `|g|^2 > |w|^2 + 1`, `|w|^2 > |g|^2 + 1` and `||w|^2 - |g|^2| <= 1`.
pub fn lemma11_closed_bound(rho_sq: f64) -> Result<f64> {
    positive("rho_sq", rho_sq)?;
    let r = rho_sq;
    let r4 = r * r;
    let den = (r + 1.0) * (r + 1.0);
    let em = (-1.0 / r).exp();
    let e = std::f64::consts::E;
    let g_dominant = r * em * r.ln_1p() / den;
    let w_dominant = 1.0 / (1.0 + r) - r * exp_integral_e1(1.0)? / den;
    let band = (-em * r4 + r4 - 3.0 * r / e + 2.0 * r - 2.0 / e + 1.0) / den;
    Ok(g_dominant + w_dominant + band)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma11Report {
    /// Direct estimate against `[0, closed-form bound]`.
    pub report: LemmaReport,
    /// Estimate of the same expectation after integrating out the phase.
    pub angular: Estimate,
    pub angular_agrees: bool,
    /// `log2(estimate) - log2(1 / rho_sq)`.
    pub gap_bits: f64,
    pub rho_sq: f64,
}

/// Checks the noise-correlation term bound for one `rho_sq`.
pub fn mc_lemma11(rho_sq: f64, mc: &McConfig) -> Result<Lemma11Report> {
    positive("rho_sq", rho_sq)?;
    let est = estimate_mean(mc, |rng| {
        let g = cgauss(rng, rho_sq);
        let w = cgauss(rng, 1.0);
        w.norm_sqr() / (1.0 + (g + w).norm_sqr())
    })?;
    let angular = estimate_mean(&mc.reseeded(1), |rng| {
        let g2 = exponential(rng, rho_sq);
        let w2 = exponential(rng, 1.0);
        let diff = w2 - g2;
        w2 / (1.0 + 2.0 * (w2 + g2) + diff * diff).sqrt()
    })?;
    let combined = (est.std_err.powi(2) + angular.std_err.powi(2)).sqrt();
    let angular_agrees = (est.mean - angular.mean).abs() <= SE_MULTIPLIER * combined;
    let report = LemmaReport::new("noise_correlation", est, 0.0, lemma11_closed_bound(rho_sq)?, None);
    Ok(Lemma11Report { report, angular, angular_agrees, gap_bits: (est.mean * rho_sq).log2(), rho_sq })
}
