//! Rate terms of the train-scale quantize-map-forward scheme at finite snr.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::NetworkParams;
use crate::optim::solve_p1_closed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateTerm {
    pub name: String,
    /// Bits per block of `T` symbols.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub terms: Vec<RateTerm>,
    pub binding: String,
    pub rate_per_symbol: f64,
    pub snr: f64,
}

impl RateReport {
    pub fn from_terms(terms: Vec<RateTerm>, t: f64, snr: f64) -> Self {
        let min = terms
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .expect("at least one term");
        RateReport { binding: min.name.clone(), rate_per_symbol: min.value / t, terms, snr }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

pub const TERM_CAP: &str = "cap";
pub const TERM_PARALLEL: &str = "parallel";
pub const TERM_MISO: &str = "miso";

/// Operating point `(p_lambda, c_r12_sq)` of the scheme, read off the
/// closed-form optimizer. A zero power exponent turns the second relay-1
/// codeword off. Expects the both-relays orientation and an snr.
pub fn scheme_operating_point(params: &NetworkParams) -> Result<(f64, f64)> {
    let snr = params.snr()?;
    let sol = solve_p1_closed(params)?;
    let c = if sol.gamma_c == 0.0 { 0.0 } else { snr.powf(sol.gamma_c - params.gamma.rd1) };
    Ok((sol.p_lambda, c))
}

/// Achievable-rate terms for time-sharing probability `p_lambda` and second
/// relay-1 codeword power `c_r12_sq`.
pub fn tsqmf_rate_bound(params: &NetworkParams, p_lambda: f64, c_r12_sq: f64) -> Result<RateReport> {
    params.validate()?;
    let snr = params.snr()?;
    if !(0.0..=1.0).contains(&p_lambda) {
        return Err(Error::param(format!("p_lambda must lie in [0, 1], got {p_lambda}")));
    }
    if !(c_r12_sq.is_finite() && c_r12_sq >= 0.0) {
        return Err(Error::param(format!("c_r12_sq must be finite and >= 0, got {c_r12_sq}")));
    }
    let t = params.t();
    let g = params.gamma;
    let l = snr.log2();
    let p = p_lambda;
    let relay1_second = (c_r12_sq * snr.powf(g.rd1) + 1.0).log2();
    let cap = (t - 1.0) * g.sr1 * l;
    let parallel = (t - 1.0) * g.sr2 * l + (1.0 - p) * (t - 1.0) * g.rd1 * l + p * (t - 2.0) * relay1_second;
    let miso = (1.0 - p) * (t - 1.0) * g.rd1 * l + p * (t - 1.0) * g.rd2 * l - p * relay1_second;
    let terms = vec![
        RateTerm { name: TERM_CAP.into(), value: cap },
        RateTerm { name: TERM_PARALLEL.into(), value: parallel },
        RateTerm { name: TERM_MISO.into(), value: miso },
    ];
    Ok(RateReport::from_terms(terms, t, snr))
}
