//! Browser bindings for the `diamond-gdof` library.
//!
//! Each export takes plain numbers and returns a JSON string; the `*_json`
//! functions hold the logic and are callable from native code.

use diamond_gdof::gdof::{gdof_network, gdof_training, subregime};
use diamond_gdof::optim::{objective_p1, solve_p1_closed_with_case};
use diamond_gdof::regime::canonicalize;
use diamond_gdof::sweep::{sweep_slope, Scheme};
use diamond_gdof::{Exponents, NetworkParams, RegimeKind, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest surface side and sweep length the page may request.
pub const MAX_POINTS: usize = 401;

fn params(t: u32, sr1: f64, sr2: f64, rd1: f64, rd2: f64) -> Result<NetworkParams> {
    NetworkParams::new(t, Exponents::new(sr1, sr2, rd1, rd2))
}

fn invalid(msg: String) -> diamond_gdof::Error {
    diamond_gdof::Error::Parameter(msg)
}

/// Regime, network gDoF, training values and the closed-form optimum.
pub fn analyze_json(t: u32, sr1: f64, sr2: f64, rd1: f64, rd2: f64) -> Result<Value> {
    let p = params(t, sr1, sr2, rd1, rd2)?;
    let g = gdof_network(&p)?;
    let training = if t >= 2 { Some(gdof_training(&p)?) } else { None };
    let (canon, _) = canonicalize(&p)?;
    let optimum = if g.regime.kind == RegimeKind::Nontrivial && t >= 2 {
        let (sol, sub) = solve_p1_closed_with_case(&canon)?;
        Some(json!({"solution": sol, "subregime": sub}))
    } else {
        None
    };
    Ok(json!({
        "regime": g.regime.kind.to_string(),
        "selected_relay": g.regime.selected_relay,
        "swapped": g.regime.swapped,
        "permutation_index": g.regime.permutation_index,
        "gdof": g.gdof,
        "t_times_gdof": g.gdof * p.t(),
        "active_formula": g.active_formula,
        "relay_used": g.relay_used,
        "subregime": (g.regime.kind == RegimeKind::Nontrivial).then(|| subregime(&canon)),
        "training": training.map(|(a, u)| json!({"achievable": a, "upper": u})),
        "optimum": optimum,
    }))
}

/// Bilinear objective on an `n x n` grid over `(p_lambda, gamma_c)`, in the
/// both-relays orientation. Rows run over `gamma_c`, columns over `p_lambda`.
pub fn objective_surface_json(t: u32, sr1: f64, sr2: f64, rd1: f64, rd2: f64, n: usize) -> Result<Value> {
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(invalid(format!("grid side must lie in [2, {MAX_POINTS}], got {n}")));
    }
    let (canon, swapped) = canonicalize(&params(t, sr1, sr2, rd1, rd2)?)?;
    let (sol, _) = solve_p1_closed_with_case(&canon)?;
    let steps = (n - 1) as f64;
    let ps: Vec<f64> = (0..n).map(|i| i as f64 / steps).collect();
    let gcs: Vec<f64> = (0..n).map(|j| canon.gamma.rd1 * j as f64 / steps).collect();
    let values = gcs
        .iter()
        .map(|&gc| ps.iter().map(|&p| objective_p1(p, gc, &canon).map(|o| o.value)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "swapped": swapped,
        "p_lambda": ps,
        "gamma_c": gcs,
        "values": values,
        "optimum": sol,
    }))
}

/// Finite-snr rate per symbol of the chosen scheme over a dB range.
#[allow(clippy::too_many_arguments)]
pub fn rate_curve_json(
    t: u32,
    sr1: f64,
    sr2: f64,
    rd1: f64,
    rd2: f64,
    db_start: f64,
    db_stop: f64,
    db_step: f64,
    scheme: &str,
) -> Result<Value> {
    if !(db_step > 0.0 && db_stop >= db_start) {
        return Err(invalid("need db_step > 0 and db_stop >= db_start".into()));
    }
    let count = ((db_stop - db_start) / db_step + 1e-9).floor() as usize + 1;
    if count > MAX_POINTS {
        return Err(invalid(format!("sweep has {count} points, limit {MAX_POINTS}")));
    }
    let dbs: Vec<f64> = (0..count).map(|k| db_start + k as f64 * db_step).collect();
    let r = sweep_slope(&params(t, sr1, sr2, rd1, rd2)?, &dbs, scheme.parse::<Scheme>()?)?;
    Ok(serde_json::to_value(r).expect("sweep result serializes"))
}

fn export(v: Result<Value>) -> std::result::Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn analyze(t: u32, sr1: f64, sr2: f64, rd1: f64, rd2: f64) -> std::result::Result<String, JsError> {
    export(analyze_json(t, sr1, sr2, rd1, rd2))
}

#[wasm_bindgen(js_name = objectiveSurface)]
pub fn objective_surface(
    t: u32,
    sr1: f64,
    sr2: f64,
    rd1: f64,
    rd2: f64,
    n: usize,
) -> std::result::Result<String, JsError> {
    export(objective_surface_json(t, sr1, sr2, rd1, rd2, n))
}

#[wasm_bindgen(js_name = rateCurve)]
#[allow(clippy::too_many_arguments)]
pub fn rate_curve(
    t: u32,
    sr1: f64,
    sr2: f64,
    rd1: f64,
    rd2: f64,
    db_start: f64,
    db_stop: f64,
    db_step: f64,
    scheme: &str,
) -> std::result::Result<String, JsError> {
    export(rate_curve_json(t, sr1, sr2, rd1, rd2, db_start, db_stop, db_step, scheme))
}
