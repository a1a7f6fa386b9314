mod common;

use common::{exp_weighted, simpson};
use diamond_gdof::special::{exp_integral_e1, exp_integral_e1_scaled};

#[test]
fn e1_matches_quadrature_at_half() {
    // E1(x) = int_0^1 e^{-x/t} / t dt after t -> x / s.
    let quad = simpson(|t: f64| if t == 0.0 { 0.0 } else { (-0.5 / t).exp() / t }, 0.0, 1.0, 200_000);
    let e1 = exp_integral_e1(0.5).unwrap();
    assert!((e1 - quad).abs() < 1e-9, "{e1} vs {quad}");
    assert!((e1 - 0.559_773_594_776_160_8).abs() < 1e-12);
}

#[test]
fn e1_anchor_values() {
    assert!((exp_integral_e1(1.0).unwrap() - 0.219_384).abs() < 1e-6);
    assert!((exp_integral_e1(1.0).unwrap() - 0.219_383_934_395_520_27).abs() < 1e-13);
    assert!((exp_integral_e1(5.0).unwrap() - 0.001_148_295_591_275_325_8).abs() < 1e-15);
}

#[test]
fn scaled_e1_matches_laplace_form() {
    // e^x E1(x) = int_0^inf e^{-t} / (x + t) dt.
    for x in [0.01, 0.3, 2.0, 40.0] {
        let quad = exp_weighted(|t| 1.0 / (x + t));
        let v = exp_integral_e1_scaled(x).unwrap();
        assert!((v - quad).abs() < 1e-6 * v.max(1.0), "x = {x}: {v} vs {quad}");
    }
}

#[test]
fn e1_domain_errors() {
    assert!(exp_integral_e1(0.0).is_err());
    assert!(exp_integral_e1(-1.0).is_err());
    assert!(exp_integral_e1(f64::NAN).is_err());
}

#[test]
fn e1_is_decreasing_and_sandwiched() {
    assert!(exp_integral_e1(2.0).unwrap() < exp_integral_e1(1.0).unwrap());
    for x in [1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 50.0] {
        let e1 = exp_integral_e1(x).unwrap();
        let lo = 0.5 * (-x).exp() * (1.0 + 2.0 / x).ln();
        let hi = (-x).exp() * (1.0 + 1.0 / x).ln();
        assert!(lo <= e1 && e1 <= hi, "x = {x}: {lo} <= {e1} <= {hi}");
    }
}
