//! Closed-form gDoF values, in bits per symbol per `log2(snr)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::NetworkParams;
use crate::regime::{self, Regime, RegimeKind, Relay};

/// Tolerance used when comparing formulas that must agree on boundaries.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subregime {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2.1")]
    TwoOne,
    #[serde(rename = "2.2")]
    TwoTwo,
}

impl fmt::Display for Subregime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subregime::One => "1",
            Subregime::TwoOne => "2.1",
            Subregime::TwoTwo => "2.2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelayUse {
    One,
    Two,
    Both,
    None,
}

impl From<Relay> for RelayUse {
    fn from(r: Relay) -> Self {
        match r {
            Relay::One => RelayUse::One,
            Relay::Two => RelayUse::Two,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GdofResult {
    pub gdof: f64,
    pub regime: Regime,
    pub active_formula: String,
    pub relay_used: RelayUse,
}

fn prefactor(params: &NetworkParams) -> f64 {
    1.0 - 1.0 / params.t()
}

/// Cut-set style bound `(1 - 1/T) min{max sr, max rd}`.
pub fn gdof_simple_bound(params: &NetworkParams) -> f64 {
    let g = params.gamma;
    prefactor(params) * g.sr1.max(g.sr2).min(g.rd1.max(g.rd2))
}

/// Best single-relay value and the relay achieving it. Ties go to relay 1.
pub fn gdof_relay_selection(params: &NetworkParams) -> (f64, Relay) {
    let g = params.gamma;
    let r1 = g.sr1.min(g.rd1);
    let r2 = g.sr2.min(g.rd2);
    let (best, relay) = if r2 > r1 { (r2, Relay::Two) } else { (r1, Relay::One) };
    (prefactor(params) * best, relay)
}

/// Subregime of a parameter set already in the both-relays orientation.
pub fn subregime(params: &NetworkParams) -> Subregime {
    let t = params.t();
    let g = params.gamma;
    if (t - 2.0) * g.rd2 - (t - 1.0) * g.rd1 <= 0.0 {
        Subregime::One
    } else if g.rd2 > g.sr2 + g.rd1 {
        Subregime::TwoOne
    } else {
        Subregime::TwoTwo
    }
}

fn subregime_value(params: &NetworkParams, sub: Subregime) -> f64 {
    let t = params.t();
    let g = params.gamma;
    match sub {
        Subregime::One => {
            let cross = if g.rd2 > 0.0 { g.sr2 * g.rd1 / g.rd2 } else { 0.0 };
            (1.0 - 1.0 / t) * (g.sr2 + g.rd1 - cross)
        }
        Subregime::TwoOne => {
            (1.0 - 1.0 / t) * (g.sr2 + g.rd1) - g.sr2 * g.rd1 / (t * (g.rd2 - g.rd1))
        }
        Subregime::TwoTwo => g.sr2 / t + (1.0 - 2.0 / t) * g.rd2,
    }
}

/// Both-relays table value. Expects the orientation where relay 1 has the
/// strongest source link and relay 2 the strongest destination link.
pub fn gdof_nontrivial(params: &NetworkParams) -> Result<(f64, Subregime)> {
    params.validate()?;
    if !regime::is_nontrivial_canonical(params) {
        return Err(Error::contract(format!(
            "exponents {:?} are not in the both-relays regime",
            params.gamma.to_array()
        )));
    }
    let sub = subregime(params);
    Ok((subregime_value(params, sub), sub))
}

/// Per-symbol values of the training-based scheme: the achievable value and
/// an upper bound on what training can reach with both relays.
pub fn gdof_training(params: &NetworkParams) -> Result<(f64, f64)> {
    params.validate()?;
    if params.coherence < 2 {
        return Err(Error::contract("training needs coherence time >= 2"));
    }
    let t = params.t();
    let g = params.gamma;
    let achievable = (t - 1.0) * g.sr1.min(g.rd1).max(g.sr2.min(g.rd2));
    let upper = [
        (t - 1.0) * g.sr1,
        (t - 2.0) * g.rd2,
        (t - 1.0) * g.sr2 + (t - 2.0) * g.rd1,
        (t - 1.0) * g.sr1 + (t - 2.0) * g.rd2,
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    Ok((achievable / t, upper / t))
}

/// Value of the formula owned by `regime`, evaluated on `params`.
pub fn regime_formula(params: &NetworkParams, regime: &Regime) -> Result<(f64, String)> {
    let canon = if regime.swapped { params.swapped() } else { *params };
    let g = canon.gamma;
    let pre = prefactor(&canon);
    let relay = if regime.swapped { 2 } else { 1 };
    Ok(match regime.kind {
        RegimeKind::RelaySelectSrLimited => (pre * g.sr1, format!("relay{relay}:sr")),
        RegimeKind::RelaySelectRdLimited => (pre * g.rd1, format!("relay{relay}:rd")),
        RegimeKind::Nontrivial => {
            let (table, sub) = gdof_nontrivial(&canon)?;
            let cap = pre * g.sr1;
            if cap < table {
                (cap, "both:sr_cap".to_string())
            } else {
                (table, format!("both:subregime{sub}"))
            }
        }
    })
}

/// Network gDoF, dispatched on the regime of `params`.
pub fn gdof_network(params: &NetworkParams) -> Result<GdofResult> {
    let regime = regime::classify(params)?;
    let relay_used = match regime.kind {
        RegimeKind::Nontrivial => RelayUse::Both,
        _ => regime.selected_relay.map_or(RelayUse::None, RelayUse::from),
    };
    if params.coherence == 1 {
        return Ok(GdofResult { gdof: 0.0, regime, active_formula: "coherence1".into(), relay_used: RelayUse::None });
    }
    let (gdof, active_formula) = regime_formula(params, &regime)?;
    Ok(GdofResult { gdof, regime, active_formula, relay_used })
}

/// Values of every applicable regime formula. All entries agree up to
/// [`BOUNDARY_TOL`] when the exponents sit on a regime boundary.
pub fn applicable_values(params: &NetworkParams) -> Result<Vec<(Regime, f64)>> {
    params.validate()?;
    regime::applicable_regimes(params)
        .into_iter()
        .map(|r| regime_formula(params, &r).map(|(v, _)| (r, v)))
        .collect()
}

/// Values of the subregime formulas that apply on a subregime boundary.
pub fn adjacent_subregime_values(params: &NetworkParams) -> Result<Vec<(Subregime, f64)>> {
    gdof_nontrivial(params)?;
    let t = params.t();
    let g = params.gamma;
    let lhs = (t - 2.0) * g.rd2 - (t - 1.0) * g.rd1;
    let mut subs = vec![subregime(params)];
    if lhs.abs() <= BOUNDARY_TOL {
        subs.push(if g.rd2 > g.sr2 + g.rd1 { Subregime::TwoOne } else { Subregime::TwoTwo });
        subs.push(Subregime::One);
    }
    if lhs >= -BOUNDARY_TOL && (g.rd2 - g.sr2 - g.rd1).abs() <= BOUNDARY_TOL {
        subs.push(Subregime::TwoOne);
        subs.push(Subregime::TwoTwo);
    }
    subs.dedup();
    Ok(subs.into_iter().map(|s| (s, subregime_value(params, s))).collect())
}
