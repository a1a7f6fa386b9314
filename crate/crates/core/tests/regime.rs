mod common;

use common::params;
use diamond_gdof::gdof::{applicable_values, gdof_network, BOUNDARY_TOL};
use diamond_gdof::regime::{canonicalize, classify, permutation, permutations};
use diamond_gdof::{RegimeKind, Relay};
use proptest::prelude::*;

/// Exponents realizing an ordering, labels listed strongest first.
fn gamma_for(perm: [u8; 4]) -> [f64; 4] {
    let mut g = [0.0; 4];
    for (rank, label) in perm.iter().enumerate() {
        g[usize::from(*label) - 1] = 4.0 - rank as f64;
    }
    g
}

/// Regime of a strict ordering, derived from the link inequalities alone.
fn oracle(g: [f64; 4]) -> (RegimeKind, bool) {
    let [sr1, sr2, rd1, rd2] = g;
    if sr1 >= sr2 && sr1 >= rd1 && rd2 >= rd1 && rd2 >= sr2 {
        return (RegimeKind::Nontrivial, false);
    }
    if sr2 >= sr1 && sr2 >= rd2 && rd1 >= rd2 && rd1 >= sr1 {
        return (RegimeKind::Nontrivial, true);
    }
    if sr1.max(sr2) < rd1.max(rd2) {
        (RegimeKind::RelaySelectSrLimited, sr2 > sr1)
    } else {
        (RegimeKind::RelaySelectRdLimited, rd2 > rd1)
    }
}

const TABLE: [(RegimeKind, bool, [u8; 4]); 6] = [
    (RegimeKind::RelaySelectSrLimited, false, [13, 14, 17, 23]),
    (RegimeKind::RelaySelectRdLimited, false, [1, 3, 4, 7]),
    (RegimeKind::Nontrivial, false, [5, 6, 19, 20]),
    (RegimeKind::RelaySelectSrLimited, true, [18, 21, 22, 24]),
    (RegimeKind::RelaySelectRdLimited, true, [2, 8, 11, 12]),
    (RegimeKind::Nontrivial, true, [9, 10, 15, 16]),
];

#[test]
fn all_orderings_match_table_and_oracle() {
    let mut seen = [false; 24];
    for (kind, swapped, idxs) in TABLE {
        for idx in idxs {
            let g = gamma_for(permutation(idx).unwrap());
            let r = classify(&params(3, g)).unwrap();
            assert_eq!((r.kind, r.swapped, r.permutation_index), (kind, swapped, idx), "ordering {idx}");
            assert_eq!(oracle(g), (kind, swapped), "oracle disagrees at {idx}");
            if kind.is_relay_select() {
                assert_eq!(r.selected_relay, Some(if swapped { Relay::Two } else { Relay::One }));
            } else {
                assert_eq!(r.selected_relay, None);
            }
            seen[usize::from(idx) - 1] = true;
        }
    }
    assert!(seen.iter().all(|s| *s));
    assert_eq!(permutations().len(), 24);
}

#[test]
fn worked_example_is_nontrivial_unswapped() {
    let r = classify(&params(3, [4.0, 1.0, 2.0, 3.0])).unwrap();
    assert_eq!(r.kind, RegimeKind::Nontrivial);
    assert!(!r.swapped);
}

#[test]
fn destination_rich_relay_one_is_source_limited() {
    let r = classify(&params(3, [2.0, 1.0, 3.0, 0.0])).unwrap();
    assert_eq!(r.kind, RegimeKind::RelaySelectSrLimited);
    assert_eq!(r.selected_relay, Some(Relay::One));
}

#[test]
fn full_tie_prefers_relay_selection_and_formulas_agree() {
    for t in [2, 3, 7] {
        let p = params(t, [1.0; 4]);
        let r = classify(&p).unwrap();
        assert!(r.kind.is_relay_select());
        assert!(!r.swapped);
        let vals = applicable_values(&p).unwrap();
        assert_eq!(vals.len(), 24);
        let expected = 1.0 - 1.0 / f64::from(t);
        for (reg, v) in vals {
            assert!((v - expected).abs() <= BOUNDARY_TOL, "{reg:?}: {v}");
        }
    }
}

#[test]
fn canonicalize_examples() {
    let (c, s) = canonicalize(&params(3, [1.0, 4.0, 3.0, 2.0])).unwrap();
    assert!(s);
    assert_eq!(c.gamma.to_array(), [4.0, 1.0, 2.0, 3.0]);
    let (c, s) = canonicalize(&params(3, [4.0, 1.0, 2.0, 3.0])).unwrap();
    assert!(!s);
    assert_eq!(c.gamma.to_array(), [4.0, 1.0, 2.0, 3.0]);
}

fn gammas() -> impl Strategy<Value = [f64; 4]> {
    [0.0..5.0f64, 0.0..5.0f64, 0.0..5.0f64, 0.0..5.0f64]
}

/// Exponents on a coarse lattice so ties show up often.
fn tied_gammas() -> impl Strategy<Value = [f64; 4]> {
    [0u8..4, 0u8..4, 0u8..4, 0u8..4].prop_map(|g| g.map(f64::from))
}

proptest! {
    #[test]
    fn swap_consistency(g in gammas(), t in 2u32..8) {
        let p = params(t, g);
        let a = classify(&p).unwrap();
        let b = classify(&p.swapped()).unwrap();
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(a.swapped, !b.swapped);
        prop_assert_eq!(a.selected_relay.map(Relay::other), b.selected_relay);
    }

    #[test]
    fn canonicalize_is_idempotent(g in gammas(), t in 2u32..8) {
        let (c1, _) = canonicalize(&params(t, g)).unwrap();
        let (c2, s2) = canonicalize(&c1).unwrap();
        prop_assert!(!s2);
        prop_assert_eq!(c1, c2);
    }

    #[test]
    fn applicable_formulas_agree_on_ties(g in tied_gammas(), t in 2u32..8) {
        let p = params(t, g);
        let vals = applicable_values(&p).unwrap();
        let net = gdof_network(&p).unwrap().gdof;
        for (reg, v) in vals {
            prop_assert!((v - net).abs() <= BOUNDARY_TOL, "{:?} gives {} vs {}", reg, v, net);
        }
    }
}
