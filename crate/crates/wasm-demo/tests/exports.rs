use diamond_gdof_wasm::{analyze_json, objective_surface_json, rate_curve_json};

#[test]
fn analyze_worked_example() {
    let v = analyze_json(3, 4.0, 1.0, 2.0, 3.0).unwrap();
    assert_eq!(v["regime"], "Nontrivial");
    assert_eq!(v["subregime"], "1");
    assert!((v["t_times_gdof"].as_f64().unwrap() - 14.0 / 3.0).abs() < 1e-9);
    assert!((v["training"]["achievable"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    assert!(v["optimum"]["solution"]["value"].is_number());
}

#[test]
fn analyze_relay_select_has_no_optimum() {
    let v = analyze_json(3, 2.0, 1.0, 3.0, 0.0).unwrap();
    assert_eq!(v["selected_relay"], 1);
    assert!(v["optimum"].is_null());
    assert!(v["subregime"].is_null());
}

#[test]
fn surface_peak_matches_optimum() {
    let v = objective_surface_json(4, 5.0, 1.0, 1.0, 3.0, 101).unwrap();
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 101);
    let peak = values
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
        .fold(f64::NEG_INFINITY, f64::max);
    let best = v["optimum"]["value"].as_f64().unwrap();
    assert!((best - 5.5).abs() < 1e-9);
    assert!(peak <= best + 1e-9 && peak >= best - 0.1);
}

#[test]
fn surface_rejects_bad_input() {
    assert!(objective_surface_json(3, 4.0, 1.0, 2.0, 3.0, 1).is_err());
    assert!(objective_surface_json(3, 2.0, 1.0, 3.0, 0.0, 11).is_err());
}

#[test]
fn rate_curve_slope() {
    let v = rate_curve_json(3, 4.0, 1.0, 2.0, 3.0, 60.0, 120.0, 10.0, "tsqmf").unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    assert!(v["rel_error"].as_f64().unwrap() <= 0.02);
    for scheme in ["tsqmf", "cutset"] {
        let page_default = rate_curve_json(3, 4.0, 1.0, 2.0, 3.0, 10.0, 120.0, 5.0, scheme).unwrap();
        assert_eq!(page_default["rows"].as_array().unwrap().len(), 23);
    }
    assert!(rate_curve_json(3, 4.0, 1.0, 2.0, 3.0, 0.0, 10.0, 1.0, "bogus").is_err());
    assert!(rate_curve_json(3, 4.0, 1.0, 2.0, 3.0, 0.0, 1000.0, 0.1, "tsqmf").is_err());
}
