mod common;

use common::{nontrivial_gamma, params};
use diamond_gdof::gdof::{
    adjacent_subregime_values, gdof_network, gdof_nontrivial, gdof_relay_selection, gdof_simple_bound, gdof_training,
    RelayUse, Subregime, BOUNDARY_TOL,
};
use diamond_gdof::{Error, RegimeKind, Relay};
use proptest::prelude::*;

const EX: [f64; 4] = [4.0, 1.0, 2.0, 3.0];

/// Brute-force maximum of the two-term bilinear objective, written
/// independently of the library.
fn grid_max(t: f64, g: [f64; 4], res: usize) -> f64 {
    let [_, sr2, rd1, rd2] = g;
    let mut best = f64::NEG_INFINITY;
    for i in 0..res {
        let p = i as f64 / (res - 1) as f64;
        for j in 0..res {
            let c = rd1 * j as f64 / (res - 1) as f64;
            let a = p * ((t - 1.0) * rd2 - c) + (t - 1.0) * (1.0 - p) * rd1;
            let b = (t - 1.0) * sr2 + (t - 2.0) * p * c + (t - 1.0) * (1.0 - p) * rd1;
            best = best.max(a.min(b));
        }
    }
    best
}

#[test]
fn simple_bound_examples() {
    assert_eq!(gdof_simple_bound(&params(3, EX)), 2.0);
    assert_eq!(gdof_simple_bound(&params(1, EX)), 0.0);
    let big = gdof_simple_bound(&params(1_000_000, EX));
    assert!((big - 3.0).abs() < 1e-5);
}

#[test]
fn relay_selection_examples() {
    let cases = [
        (params(3, EX), 4.0 / 3.0, Relay::One),
        (params(3, [1.0, 4.0, 3.0, 2.0]), 4.0 / 3.0, Relay::Two),
        (params(4, [2.0, 1.0, 3.0, 0.0]), 0.75 * 2.0, Relay::One),
        (params(5, [2.5; 4]), 0.8 * 2.5, Relay::One),
    ];
    for (p, v, r) in cases {
        let (got, relay) = gdof_relay_selection(&p);
        assert!((got - v).abs() < 1e-12, "{got} vs {v}");
        assert_eq!(relay, r);
    }
}

#[test]
fn relay_two_alone_on_worked_example() {
    let g = EX;
    let relay2 = (1.0 - 1.0 / 3.0) * g[1].min(g[3]);
    assert!((relay2 - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn nontrivial_examples() {
    let (v, s) = gdof_nontrivial(&params(3, EX)).unwrap();
    assert_eq!(s, Subregime::One);
    assert!((v - 14.0 / 9.0).abs() < 1e-12);
    let (v, s) = gdof_nontrivial(&params(4, [5.0, 1.0, 1.0, 3.0])).unwrap();
    assert_eq!(s, Subregime::TwoOne);
    assert!((v - 1.375).abs() < 1e-12);
    let (v, s) = gdof_nontrivial(&params(5, [5.0, 2.0, 1.0, 3.0])).unwrap();
    assert_eq!(s, Subregime::TwoTwo);
    assert!((v - 2.2).abs() < 1e-12);
}

#[test]
fn nontrivial_table_matches_brute_force() {
    for (t, g) in [(3, EX), (4, [5.0, 1.0, 1.0, 3.0]), (5, [5.0, 2.0, 1.0, 3.0])] {
        let oracle = grid_max(f64::from(t), g, 1001) / f64::from(t);
        let (v, _) = gdof_nontrivial(&params(t, g)).unwrap();
        assert!((v - oracle).abs() < 1e-2, "T={t} {g:?}: {v} vs {oracle}");
    }
}

#[test]
fn nontrivial_rejects_other_regimes() {
    let err = gdof_nontrivial(&params(3, [2.0, 1.0, 3.0, 0.0])).unwrap_err();
    assert!(matches!(err, Error::Contract(_)));
}

#[test]
fn training_examples() {
    let (a, u) = gdof_training(&params(3, EX)).unwrap();
    assert!((3.0 * a - 4.0).abs() < 1e-12);
    assert!((3.0 * u - 3.0).abs() < 1e-12);
    let (_, u) = gdof_training(&params(2, EX)).unwrap();
    assert_eq!(u, 0.0);
    assert!(gdof_training(&params(1, EX)).is_err());
}

#[test]
fn training_is_strictly_suboptimal_on_worked_example() {
    let p = params(3, EX);
    let net = 3.0 * gdof_network(&p).unwrap().gdof;
    let (a, u) = gdof_training(&p).unwrap();
    assert!((net - 14.0 / 3.0).abs() < 1e-12);
    assert!(net > 3.0 * a && 3.0 * a > 3.0 * u);
}

#[test]
fn network_examples() {
    let r = gdof_network(&params(3, [2.0, 1.0, 3.0, 0.0])).unwrap();
    assert!((r.gdof - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(r.relay_used, RelayUse::One);

    let r = gdof_network(&params(3, EX)).unwrap();
    assert!((r.gdof - 14.0 / 9.0).abs() < 1e-12);
    assert_eq!(r.regime.kind, RegimeKind::Nontrivial);
    assert_eq!(r.relay_used, RelayUse::Both);
    assert_eq!(r.active_formula, "both:subregime1");

    let r = gdof_network(&params(4, [2.1, 1.0, 2.0, 3.0])).unwrap();
    assert!((r.gdof - 1.575).abs() < 1e-12);
    assert_eq!(r.active_formula, "both:sr_cap");
    let (table, _) = gdof_nontrivial(&params(4, [2.1, 1.0, 2.0, 3.0])).unwrap();
    assert!(table > r.gdof);
}

#[test]
fn coherence_one_has_zero_gdof() {
    for g in [EX, [2.0, 1.0, 3.0, 0.0], [1.0; 4]] {
        assert_eq!(gdof_network(&params(1, g)).unwrap().gdof, 0.0);
    }
}

#[test]
fn swapped_orientation_gives_same_value() {
    let a = gdof_network(&params(3, EX)).unwrap();
    let b = gdof_network(&params(3, [1.0, 4.0, 3.0, 2.0])).unwrap();
    assert!(b.regime.swapped);
    assert!((a.gdof - b.gdof).abs() < 1e-12);
}

#[test]
fn subregime_boundaries_agree() {
    // (T-2) rd2 = (T-1) rd1 at T=3, rd2 = 2 rd1.
    let on_first = params(3, [5.0, 1.0, 1.0, 2.0]);
    // rd2 = sr2 + rd1 with the first boundary expression positive.
    let on_second = params(5, [5.0, 1.0, 1.5, 2.5]);
    for p in [on_first, on_second] {
        let vals = adjacent_subregime_values(&p).unwrap();
        assert!(vals.len() >= 2, "{vals:?}");
        let v0 = vals[0].1;
        for (s, v) in &vals {
            assert!((v - v0).abs() <= BOUNDARY_TOL, "{s:?}: {v} vs {v0}");
        }
    }
}

fn any_gamma() -> impl Strategy<Value = [f64; 4]> {
    [0.0..5.0f64, 0.0..5.0f64, 0.0..5.0f64, 0.0..5.0f64]
}

proptest! {
    #[test]
    fn relay_selection_regimes_meet_simple_bound(g in any_gamma(), t in 1u32..10) {
        let p = params(t, g);
        let r = gdof_network(&p).unwrap();
        if r.regime.kind.is_relay_select() {
            prop_assert!((r.gdof - gdof_simple_bound(&p)).abs() < 1e-12);
        }
    }

    #[test]
    fn network_is_monotone_in_each_exponent(g in any_gamma(), t in 2u32..10, k in 0usize..4, d in 0.0..2.0f64) {
        let mut h = g;
        h[k] += d;
        let lo = gdof_network(&params(t, g)).unwrap().gdof;
        let hi = gdof_network(&params(t, h)).unwrap().gdof;
        prop_assert!(hi >= lo - 1e-9, "{:?} -> {} but {:?} -> {}", g, lo, h, hi);
    }

    #[test]
    fn network_is_bounded(g in any_gamma(), t in 1u32..10) {
        let p = params(t, g);
        let v = gdof_network(&p).unwrap().gdof;
        prop_assert!(v >= 0.0);
        prop_assert!(v <= (1.0 - 1.0 / f64::from(t)) * p.gamma.max() + 1e-12);
        prop_assert!(v <= gdof_simple_bound(&p) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn network_matches_capped_grid_in_both_relays_regime(raw in any_gamma(), t in 2u32..9) {
        let g = nontrivial_gamma(raw);
        let p = params(t, g);
        let tf = f64::from(t);
        let res = 401;
        let oracle = ((tf - 1.0) * g[0]).min(grid_max(tf, g, res));
        // Objective slopes are at most (T - 1) max(gamma) per unit of either
        // coordinate; one cell per coordinate bounds the gap.
        let cell = 2.0 * (tf - 1.0) * g.iter().cloned().fold(0.0, f64::max) * 2.0 / (res - 1) as f64;
        let net = tf * gdof_network(&p).unwrap().gdof;
        prop_assert!((net - oracle).abs() <= 2.0 * cell + 1e-12, "{} vs {}", net, oracle);
    }
}
