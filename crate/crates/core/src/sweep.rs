//! SNR sweeps of the scheme rate or the reduced cut bound, with a slope fit
//! over the top two decades.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::tsqmf::TERM_CAP;
use crate::bounds::{psi1, psi2, scheme_operating_point, tsqmf_rate_bound, RateReport, RateTerm};
use crate::error::{Error, Result};
use crate::fit::{linear_fit, rel_error};
use crate::gdof::gdof_network;
use crate::model::{MassPointDistribution, NetworkParams};
use crate::optim::solve_p1_closed;
use crate::regime::{canonicalize, is_nontrivial_canonical};

/// Width of the fitted window, in dB.
pub const FIT_WINDOW_DB: f64 = 20.0;

pub const TERM_BROADCAST: &str = "broadcast";
pub const TERM_PARALLEL_CUT: &str = "parallel_cut";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Tsqmf,
    Cutset,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Tsqmf => "tsqmf",
            Scheme::Cutset => "cutset",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsqmf" => Ok(Scheme::Tsqmf),
            "cutset" => Ok(Scheme::Cutset),
            other => Err(Error::param(format!("unknown scheme {other:?}, expected tsqmf or cutset"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub snr_db: f64,
    pub snr: f64,
    pub p_lambda: f64,
    pub c_r12_sq: f64,
    pub report: RateReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub scheme: Scheme,
    pub rows: Vec<SweepRow>,
    /// Fitted growth of `T * rate` per bit of `log2 snr`.
    pub fitted_slope: f64,
    /// `T` times the network gDoF.
    pub slope_target: f64,
    pub rel_error: f64,
    /// Rows that entered the fit.
    pub fit_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn cutset_report(params: &NetworkParams) -> Result<(f64, f64, RateReport)> {
    let sol = solve_p1_closed(params)?;
    let c = sol.c_r12_sq.ok_or_else(|| Error::contract("cut bound evaluation needs an snr"))?;
    let t = params.t();
    let gains = params.gains()?;
    let dist = MassPointDistribution::two_point(t, c, sol.p_lambda)?;
    let terms = vec![
        RateTerm { name: TERM_CAP.into(), value: (t - 1.0) * gains.sr1.log2() },
        RateTerm { name: TERM_BROADCAST.into(), value: psi1(&dist, gains.rd1, gains.rd2, params.coherence) },
        RateTerm {
            name: TERM_PARALLEL_CUT.into(),
            value: (t - 1.0) * gains.sr2.log2() + psi2(&dist, gains.rd1, gains.rd2, params.coherence),
        },
    ];
    Ok((sol.p_lambda, c, RateReport::from_terms(terms, t, params.snr()?)))
}

/// Evaluates `scheme` at each snr (in dB) and fits the block-rate slope over
/// the points within [`FIT_WINDOW_DB`] of the largest snr.
pub fn sweep_slope(params: &NetworkParams, snr_db: &[f64], scheme: Scheme) -> Result<SweepResult> {
    params.validate()?;
    if snr_db.len() < 2 {
        return Err(Error::param("a sweep needs at least two snr values"));
    }
    if let Some(bad) = snr_db.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(Error::param(format!("snr must exceed 0 dB, got {bad}")));
    }
    let (canon, _) = canonicalize(params)?;
    if !is_nontrivial_canonical(&canon) {
        return Err(Error::contract("sweeps need exponents in the both-relays regime"));
    }
    let slope_target = params.t() * gdof_network(params)?.gdof;

    let mut rows = Vec::with_capacity(snr_db.len());
    for &db in snr_db {
        let snr = db_to_linear(db);
        let at = canon.with_snr(snr)?;
        let (p_lambda, c_r12_sq, report) = match scheme {
            Scheme::Tsqmf => {
                let (p, c) = scheme_operating_point(&at)?;
                (p, c, tsqmf_rate_bound(&at, p, c)?)
            }
            Scheme::Cutset => cutset_report(&at)?,
        };
        rows.push(SweepRow { snr_db: db, snr, p_lambda, c_r12_sq, report });
    }

    let top = snr_db.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let bottom = snr_db.iter().cloned().fold(f64::INFINITY, f64::min);
    let window: Vec<&SweepRow> = rows.iter().filter(|r| r.snr_db >= top - FIT_WINDOW_DB - 1e-9).collect();
    let xs: Vec<f64> = window.iter().map(|r| r.snr.log2()).collect();
    let ys: Vec<f64> = window.iter().map(|r| params.t() * r.report.rate_per_symbol).collect();
    let fitted_slope = linear_fit(&xs, &ys)?.slope;
    let fit_points = window.len();

    let warning = (top - bottom < FIT_WINDOW_DB || fit_points < 3).then(|| {
        format!(
            "sweep spans {:.1} dB with {} fitted points; use at least 3 points over {FIT_WINDOW_DB} dB or more",
            top - bottom,
            fit_points
        )
    });
    Ok(SweepResult {
        scheme,
        rows,
        fitted_slope,
        slope_target,
        rel_error: rel_error(fitted_slope, slope_target),
        fit_points,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Exponents;

    fn params(t: u32, g: [f64; 4]) -> NetworkParams {
        NetworkParams::new(t, Exponents::from_array(g)).unwrap()
    }

    fn db_range() -> Vec<f64> {
        (0..=6).map(|k| 60.0 + 10.0 * f64::from(k)).collect()
    }

    #[test]
    fn tsqmf_sweep_on_worked_example() {
        let r = sweep_slope(&params(3, [4.0, 1.0, 2.0, 3.0]), &db_range(), Scheme::Tsqmf).unwrap();
        assert!((r.slope_target - 14.0 / 3.0).abs() < 1e-12);
        assert!(r.rel_error <= 0.02, "{r:?}");
        assert_eq!(r.fit_points, 3);
        assert!(r.warning.is_none());
    }

    #[test]
    fn cutset_sweep_has_same_target() {
        let r = sweep_slope(&params(3, [4.0, 1.0, 2.0, 3.0]), &db_range(), Scheme::Cutset).unwrap();
        assert!(r.rel_error <= 0.02, "{r:?}");
    }

    #[test]
    fn narrow_range_warns_but_computes() {
        let r = sweep_slope(&params(3, [4.0, 1.0, 2.0, 3.0]), &[60.0, 65.0, 70.0], Scheme::Tsqmf).unwrap();
        assert!(r.warning.is_some());
        assert!(r.fitted_slope.is_finite());
    }

    #[test]
    fn swapped_orientation_is_canonicalized() {
        let a = sweep_slope(&params(3, [4.0, 1.0, 2.0, 3.0]), &db_range(), Scheme::Tsqmf).unwrap();
        let b = sweep_slope(&params(3, [1.0, 4.0, 3.0, 2.0]), &db_range(), Scheme::Tsqmf).unwrap();
        assert_eq!(a.fitted_slope, b.fitted_slope);
    }

    #[test]
    fn rejects_bad_sweeps() {
        let p = params(3, [4.0, 1.0, 2.0, 3.0]);
        assert!(sweep_slope(&p, &[60.0], Scheme::Tsqmf).is_err());
        assert!(sweep_slope(&p, &[60.0, -1.0], Scheme::Tsqmf).is_err());
        assert!(matches!(
            sweep_slope(&params(3, [2.0, 1.0, 3.0, 0.0]), &[60.0, 80.0], Scheme::Tsqmf),
            Err(Error::Contract(_))
        ));
        assert!("qmf".parse::<Scheme>().is_err());
        assert_eq!("cutset".parse::<Scheme>().unwrap(), Scheme::Cutset);
    }
}
