//! Two-variable bilinear max-min program over `(p, gamma_c)`.
//!
//! Both terms are per unit `log2(snr)` and per block of `T` symbols.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gdof::{self, Subregime};
use crate::model::NetworkParams;
use crate::regime;

/// Relative tolerance for deciding that both terms are active.
pub const ACTIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActiveTerm {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptSolution {
    pub p_lambda: f64,
    pub gamma_c: f64,
    /// `snr^(gamma_c - gamma_rd1)`, present when an snr is known.
    pub c_r12_sq: Option<f64>,
    pub value: f64,
    pub active_term: ActiveTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objective {
    pub term1: f64,
    pub term2: f64,
    pub value: f64,
}

#[inline]
fn terms(p: f64, gc: f64, t: f64, sr2: f64, rd1: f64, rd2: f64) -> (f64, f64) {
    let shared = (t - 1.0) * (1.0 - p) * rd1;
    let t1 = p * ((t - 1.0) * rd2 - gc) + shared;
    let t2 = (t - 1.0) * sr2 + (t - 2.0) * p * gc + shared;
    (t1, t2)
}

pub fn objective_p1(p_lambda: f64, gamma_c: f64, params: &NetworkParams) -> Result<Objective> {
    params.validate()?;
    if !(0.0..=1.0).contains(&p_lambda) {
        return Err(Error::param(format!("p_lambda must lie in [0, 1], got {p_lambda}")));
    }
    let g = params.gamma;
    if !(0.0..=g.rd1).contains(&gamma_c) {
        return Err(Error::param(format!("gamma_c must lie in [0, {}], got {gamma_c}", g.rd1)));
    }
    let (term1, term2) = terms(p_lambda, gamma_c, params.t(), g.sr2, g.rd1, g.rd2);
    Ok(Objective { term1, term2, value: term1.min(term2) })
}

fn active(obj: &Objective) -> ActiveTerm {
    let scale = obj.term1.abs().max(obj.term2.abs()).max(1.0);
    if (obj.term1 - obj.term2).abs() <= ACTIVE_TOL * scale {
        ActiveTerm::Both
    } else if obj.term1 < obj.term2 {
        ActiveTerm::First
    } else {
        ActiveTerm::Second
    }
}

fn solution(p: f64, gc: f64, params: &NetworkParams) -> Result<OptSolution> {
    let obj = objective_p1(p, gc, params)?;
    Ok(OptSolution {
        p_lambda: p,
        gamma_c: gc,
        c_r12_sq: params.snr.map(|snr| snr.powf(gc - params.gamma.rd1)),
        value: obj.value,
        active_term: active(&obj),
    })
}

/// Maximizer in closed form, with the subregime that selected it.
pub fn solve_p1_closed_with_case(params: &NetworkParams) -> Result<(OptSolution, Subregime)> {
    params.validate()?;
    if !regime::is_nontrivial_canonical(params) {
        return Err(Error::contract(format!(
            "exponents {:?} are not in the both-relays regime",
            params.gamma.to_array()
        )));
    }
    let g = params.gamma;
    let sub = gdof::subregime(params);
    let (p, gc) = match sub {
        Subregime::One => (if g.rd2 > 0.0 { g.sr2 / g.rd2 } else { 0.0 }, 0.0),
        Subregime::TwoOne => (g.sr2 / (g.rd2 - g.rd1), g.rd1),
        Subregime::TwoTwo => (1.0, (g.rd2 - g.sr2).clamp(0.0, g.rd1)),
    };
    Ok((solution(p.clamp(0.0, 1.0), gc, params)?, sub))
}

pub fn solve_p1_closed(params: &NetworkParams) -> Result<OptSolution> {
    solve_p1_closed_with_case(params).map(|(s, _)| s)
}

/// Exhaustive maximization on a `resolution x resolution` grid. Ties resolve
/// to the lexicographically smallest `(p, gamma_c)`.
pub fn solve_p1_grid(params: &NetworkParams, resolution: usize) -> Result<OptSolution> {
    params.validate()?;
    if resolution < 2 {
        return Err(Error::param(format!("grid resolution must be >= 2, got {resolution}")));
    }
    let g = params.gamma;
    let t = params.t();
    let steps = (resolution - 1) as f64;
    let gc_points = if g.rd1 > 0.0 { resolution } else { 1 };
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..resolution {
        let p = i as f64 / steps;
        for j in 0..gc_points {
            let gc = g.rd1 * (j as f64 / steps);
            let (t1, t2) = terms(p, gc, t, g.sr2, g.rd1, g.rd2);
            let v = t1.min(t2);
            if v > best.0 {
                best = (v, p, gc);
            }
        }
    }
    solution(best.1, best.2, params)
}

/// Bound on how far the grid maximum can sit below the true maximum: the
/// objective's Lipschitz constants times one grid cell.
pub fn lipschitz_cell_bound(params: &NetworkParams, resolution: usize) -> f64 {
    let g = params.gamma;
    let t = params.t();
    let steps = (resolution.max(2) - 1) as f64;
    let (dp, dg) = (1.0 / steps, g.rd1 / steps);
    let first = ((t - 1.0) * g.rd2 + g.rd1 + (t - 1.0) * g.rd1) * dp + dg;
    let second = ((t - 2.0).abs() * g.rd1 + (t - 1.0) * g.rd1) * dp + (t - 2.0).abs() * dg;
    first.max(second)
}
