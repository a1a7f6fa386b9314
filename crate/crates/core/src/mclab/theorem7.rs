//! Expectation chain behind the train-scale point-to-point rate claim.
//!
//! For `g ~ CN(0, rho_sq)`, pilot noise `w' ~ CN(0, 1)`, `z = g + w'` and
//! `ghat = make_ghat(z)`, every step of the chain is estimated and its
//! direction checked, and the end points are checked for their growth
//! rate in `log2 rho_sq`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::mc::{estimate, Estimate, McConfig};
use crate::mclab::report::SE_MULTIPLIER;
use crate::mclab::tsqmf_sim::make_ghat;
use crate::sampling::cgauss;
use crate::special::{exp_integral_e1_scaled, EULER_GAMMA, LOG2_E};

/// Allowed deviation of a fitted slope from its target.
pub const SLOPE_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem7Row {
    pub rho_sq: f64,
    /// `E log2 |g / ghat|^2`.
    pub log_ratio: Estimate,
    /// `log_ratio - log2(rho_sq / (2 (2 + rho_sq)))`.
    pub gap_ratio_floor: f64,
    /// `E log2(2 (1 + |z|^2) / |ghat|^2)`, the loss from bounding `|ghat|^2`.
    pub gap_ghat_cap: Estimate,
    /// `E log2(1 + |z|^2)`.
    pub log_one_plus: Estimate,
    pub log_one_plus_lo: f64,
    pub log_one_plus_hi: f64,
    /// Loss from replacing the exact scaled-error power by its cap.
    pub gap_error_power: Estimate,
    /// `E[1 / (1 + |z|^2)]`.
    pub reciprocal: Estimate,
    pub reciprocal_exact: f64,
    /// `ln(2 + rho_sq) / (1 + rho_sq)` minus the exact reciprocal moment.
    pub gap_reciprocal: f64,
    /// Conditional-entropy upper bound per data symbol, in bits.
    pub entropy_bound_per_symbol: f64,
    /// Constant `C` in `-E log2(2 (1 + |z|^2)) >= log2(1 / rho_sq) - C`.
    pub quantizer_constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem7Report {
    pub coherence: u32,
    pub rows: Vec<Theorem7Row>,
    /// Fitted slope of `E log2 |g / ghat|^2` versus `log2 rho_sq` (target 0).
    /// `None` for a single row.
    pub slope_log_ratio: Option<f64>,
    /// Fitted slope of the per-symbol entropy bound (target -1).
    pub slope_entropy_bound: Option<f64>,
    pub gaps_nonnegative: bool,
    /// The sampled reciprocal moment covers its exact value.
    pub reciprocal_agrees: bool,
    pub jensen_gap_holds: bool,
    pub quantizer_constant_ok: bool,
    pub slope_log_ratio_ok: bool,
    pub slope_entropy_bound_ok: bool,
    pub pass: bool,
}

fn row(rho_sq: f64, t: u32, mc: &McConfig) -> Result<Theorem7Row> {
    let tm1 = f64::from(t) - 1.0;
    // `ghat - z` is the unit phasor, so `g / ghat - 1 = -(phasor + w') / ghat`.
    let [log_ratio, gap_ghat_cap, log_one_plus, noise_ratio, reciprocal, gap_error_power] =
        estimate(mc, |rng| {
            let g = cgauss(rng, rho_sq);
            let w = cgauss(rng, 1.0);
            let z = g + w;
            let ghat = make_ghat(z);
            let gh2 = ghat.norm_sqr();
            let one_plus = 1.0 + z.norm_sqr();
            let exact = ((ghat - z + w) / ghat).norm_sqr() * tm1 + 2.0 / gh2;
            let capped = (2.0 + 2.0 * w.norm_sqr()) / one_plus * tm1 + 2.0 / one_plus;
            [
                (g.norm_sqr() / gh2).log2(),
                (2.0 * one_plus / gh2).log2(),
                one_plus.log2(),
                2.0 * w.norm_sqr() / one_plus,
                1.0 / one_plus,
                capped - exact,
            ]
        })?;
    let pi_e = std::f64::consts::PI * std::f64::consts::E;
    let recip_cap = (2.0 + rho_sq).ln() / (rho_sq + 1.0);
    let head = (pi_e * (noise_ratio.mean * tm1 + 2.0 * f64::from(t) * recip_cap)).log2();
    let tail = (tm1 - 1.0) * (pi_e * 2.0 * recip_cap).log2();
    let mean_sq = 1.0 + rho_sq;
    let reciprocal_exact = exp_integral_e1_scaled(1.0 / mean_sq)? / mean_sq;
    Ok(Theorem7Row {
        rho_sq,
        log_ratio,
        gap_ratio_floor: log_ratio.mean - (rho_sq / (2.0 * (2.0 + rho_sq))).log2(),
        gap_ghat_cap,
        log_one_plus,
        log_one_plus_lo: (1.0 + mean_sq).log2() - EULER_GAMMA * LOG2_E,
        log_one_plus_hi: (1.0 + mean_sq).log2(),
        gap_error_power,
        reciprocal,
        reciprocal_exact,
        gap_reciprocal: recip_cap - reciprocal_exact,
        entropy_bound_per_symbol: (head + tail) / tm1,
        quantizer_constant: 1.0 + log_one_plus.mean - rho_sq.log2(),
    })
}

/// Estimates the chain at each `rho_sq` and fits growth rates across them.
pub fn mc_theorem7_components(rho_sq_list: &[f64], t: u32, mc: &McConfig) -> Result<Theorem7Report> {
    if t < 2 {
        return Err(Error::param("coherence time must be >= 2"));
    }
    if rho_sq_list.is_empty() {
        return Err(Error::param("need at least one rho_sq value"));
    }
    if let Some(bad) = rho_sq_list.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::param(format!("rho_sq must be finite and > 0, got {bad}")));
    }
    let rows = rho_sq_list
        .iter()
        .enumerate()
        .map(|(i, &r)| row(r, t, &mc.reseeded(i as u64)))
        .collect::<Result<Vec<_>>>()?;

    let xs: Vec<f64> = rows.iter().map(|r| r.rho_sq.log2()).collect();
    let slope = |f: fn(&Theorem7Row) -> f64| -> Result<Option<f64>> {
        if rows.len() < 2 {
            return Ok(None);
        }
        Ok(Some(linear_fit(&xs, &rows.iter().map(f).collect::<Vec<_>>())?.slope))
    };
    let slope_log_ratio = slope(|r| r.log_ratio.mean)?;
    let slope_entropy_bound = slope(|r| r.entropy_bound_per_symbol)?;

    let k = SE_MULTIPLIER;
    let gaps_nonnegative = rows.iter().all(|r| {
        r.gap_ratio_floor >= -k * r.log_ratio.std_err
            && r.gap_ghat_cap.mean >= -k * r.gap_ghat_cap.std_err
            && r.gap_error_power.mean >= -k * r.gap_error_power.std_err
            && r.gap_reciprocal >= 0.0
    });
    let jensen_gap_holds = rows.iter().all(|r| {
        let e = r.log_one_plus;
        r.log_one_plus_lo - k * e.std_err <= e.mean && e.mean <= r.log_one_plus_hi + k * e.std_err
    });
    let reciprocal_agrees = rows.iter().all(|r| r.reciprocal.covers(r.reciprocal_exact, k));
    let quantizer_constant_ok = rows.iter().all(|r| r.quantizer_constant <= EULER_GAMMA * LOG2_E + 2.0);
    let slope_log_ratio_ok = slope_log_ratio.is_some_and(|s| s.abs() <= SLOPE_TOL);
    let slope_entropy_bound_ok = slope_entropy_bound.is_some_and(|s| (s + 1.0).abs() <= SLOPE_TOL);
    let pass = gaps_nonnegative
        && reciprocal_agrees
        && jensen_gap_holds
        && quantizer_constant_ok
        && slope_log_ratio_ok
        && slope_entropy_bound_ok;
    Ok(Theorem7Report {
        coherence: t,
        rows,
        slope_log_ratio,
        slope_entropy_bound,
        gaps_nonnegative,
        reciprocal_agrees,
        jensen_gap_holds,
        quantizer_constant_ok,
        slope_log_ratio_ok,
        slope_entropy_bound_ok,
        pass,
    })
}
