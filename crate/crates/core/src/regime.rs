//! Regime taxonomy over the 24 orderings of the link exponents.
//!
//! Links are labelled `1 = sr1, 2 = sr2, 3 = rd1, 4 = rd2`. An ordering is
//! written as the labels in descending exponent order, e.g. `[1, 4, 3, 2]`
//! means `sr1 >= rd2 >= rd1 >= sr2`. Orderings are indexed 1..=24 in
//! lexicographic order of that label sequence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::NetworkParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeKind {
    /// One relay suffices; the source-side link of that relay is the bottleneck.
    RelaySelectSrLimited,
    /// One relay suffices; the destination-side link of that relay is the bottleneck.
    RelaySelectRdLimited,
    /// Both relays are needed.
    Nontrivial,
}

impl RegimeKind {
    pub fn is_relay_select(self) -> bool {
        !matches!(self, RegimeKind::Nontrivial)
    }
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeKind::RelaySelectSrLimited => "RelaySelect_SrLimited",
            RegimeKind::RelaySelectRdLimited => "RelaySelect_RdLimited",
            RegimeKind::Nontrivial => "Nontrivial",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Relay {
    One,
    Two,
}

impl Relay {
    pub fn other(self) -> Relay {
        match self {
            Relay::One => Relay::Two,
            Relay::Two => Relay::One,
        }
    }
}

impl From<Relay> for u8 {
    fn from(r: Relay) -> u8 {
        match r {
            Relay::One => 1,
            Relay::Two => 2,
        }
    }
}

impl TryFrom<u8> for Relay {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Relay::One),
            2 => Ok(Relay::Two),
            _ => Err(format!("relay index must be 1 or 2, got {v}")),
        }
    }
}

impl fmt::Display for Relay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regime {
    pub kind: RegimeKind,
    pub selected_relay: Option<Relay>,
    /// Relay labels were exchanged to reach the canonical orientation.
    pub swapped: bool,
    pub permutation_index: u8,
}

/// All orderings, indexed from 1.
pub fn permutations() -> [[u8; 4]; 24] {
    let mut out = [[0u8; 4]; 24];
    let mut k = 0;
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                for d in 1..=4u8 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[k] = [a, b, c, d];
                        k += 1;
                    }
                }
            }
        }
    }
    out
}

pub fn permutation(index: u8) -> Option<[u8; 4]> {
    (1..=24).contains(&index).then(|| permutations()[usize::from(index) - 1])
}

pub fn permutation_index(perm: [u8; 4]) -> Option<u8> {
    permutations().iter().position(|p| *p == perm).map(|i| i as u8 + 1)
}

/// Regime and orientation owned by each ordering.
pub fn ordering_regime(index: u8) -> Option<(RegimeKind, bool)> {
    use RegimeKind::*;
    let r = match index {
        13 | 14 | 17 | 23 => (RelaySelectSrLimited, false),
        1 | 3 | 4 | 7 => (RelaySelectRdLimited, false),
        5 | 6 | 19 | 20 => (Nontrivial, false),
        18 | 21 | 22 | 24 => (RelaySelectSrLimited, true),
        2 | 8 | 11 | 12 => (RelaySelectRdLimited, true),
        9 | 10 | 15 | 16 => (Nontrivial, true),
        _ => return None,
    };
    Some(r)
}

fn regime_for_index(index: u8) -> Regime {
    let (kind, swapped) = ordering_regime(index).expect("index in 1..=24");
    let selected_relay = kind.is_relay_select().then_some(if swapped { Relay::Two } else { Relay::One });
    Regime { kind, selected_relay, swapped, permutation_index: index }
}

fn consistent_orderings(params: &NetworkParams) -> Vec<u8> {
    let g = params.gamma.to_array();
    permutations()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.windows(2).all(|w| g[usize::from(w[0]) - 1] >= g[usize::from(w[1]) - 1]))
        .map(|(i, _)| i as u8 + 1)
        .collect()
}

/// Every regime whose ordering is consistent with `params`. More than one
/// entry only when exponents tie.
pub fn applicable_regimes(params: &NetworkParams) -> Vec<Regime> {
    consistent_orderings(params).into_iter().map(regime_for_index).collect()
}

/// Classifies `params`. Ties resolve toward relay selection, then toward the
/// unswapped orientation, then toward the lowest ordering index.
pub fn classify(params: &NetworkParams) -> Result<Regime> {
    params.validate()?;
    let best = applicable_regimes(params)
        .into_iter()
        .min_by_key(|r| (!r.kind.is_relay_select(), r.swapped, r.permutation_index))
        .expect("some ordering is always consistent");
    Ok(best)
}

/// Returns the relay-relabelled parameters when the canonical orientation
/// needs it, with the flag telling whether a swap happened.
pub fn canonicalize(params: &NetworkParams) -> Result<(NetworkParams, bool)> {
    let swapped = classify(params)?.swapped;
    Ok((if swapped { params.swapped() } else { *params }, swapped))
}

/// Both-relays regime condition, checked on the given orientation.
pub fn is_nontrivial_canonical(params: &NetworkParams) -> bool {
    let g = params.gamma;
    g.sr1 >= g.sr2 && g.sr1 >= g.rd1 && g.rd2 >= g.rd1 && g.rd2 >= g.sr2
}
