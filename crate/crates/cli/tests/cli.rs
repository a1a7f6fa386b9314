use std::process::Command;

use diamond_gdof_cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("diamond-gdof").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn gdof_worked_example() {
    let v = json(&["gdof", "--T", "3", "--gamma", "4,1,2,3"]);
    assert_eq!(v["command"], "gdof");
    assert_eq!(v["meta"]["seed"], 0);
    let r = &v["result"];
    assert!((r["gdof"].as_f64().unwrap() - 14.0 / 9.0).abs() < 1e-9);
    assert_eq!(r["regime"], "Nontrivial");
    assert_eq!(r["subregime"], "1");
    assert_eq!(r["relay_used"], "both");
}

#[test]
fn classify_relay_select() {
    let v = json(&["classify", "--T", "3", "--gamma", "2,1,3,0"]);
    let r = &v["result"];
    assert!(r["regime"].as_str().unwrap().starts_with("RelaySelect"));
    assert_eq!(r["selected_relay"], 1);
    assert_eq!(r["swapped"], false);
}

#[test]
fn json_round_trip_matches_library() {
    let v = json(&["solve", "--T", "4", "--gamma", "5,1,1,3", "--grid-res", "401"]);
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, back);
    let p = diamond_gdof::NetworkParams::new(4, diamond_gdof::Exponents::new(5.0, 1.0, 1.0, 3.0)).unwrap();
    let closed = diamond_gdof::optim::solve_p1_closed(&p).unwrap();
    let got = &v["result"]["closed"];
    assert!((got["value"].as_f64().unwrap() - closed.value).abs() <= 1e-12);
    assert!((got["p_lambda"].as_f64().unwrap() - closed.p_lambda).abs() <= 1e-12);
    assert_eq!(v["result"]["subregime"], "2.1");
}

#[test]
fn output_is_deterministic() {
    let args = ["simulate", "--T", "3", "--gamma", "4,1,2,3", "--snr-db", "30", "--blocks", "3", "--seed", "11"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let c = cli(&["simulate", "--T", "3", "--gamma", "4,1,2,3", "--snr-db", "30", "--blocks", "3", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["gdof", "--T", "3", "--gamma", "4,1,2,3"]).code, 0);
    assert_eq!(cli(&["--help"]).code, 0);
    assert_eq!(cli(&["gdof", "--T", "0", "--gamma", "4,1,2,3"]).code, 2);
    assert_eq!(cli(&["gdof", "--T", "3", "--gamma", "4,-1,2,3"]).code, 2);
    assert_eq!(cli(&["solve", "--T", "3", "--gamma", "2,1,3,0"]).code, 2);
    assert_eq!(cli(&["gdof", "--T", "3", "--gamma", "4,1"]).code, 64);
    assert_eq!(cli(&["gdof", "--gamma", "4,1,2,3"]).code, 64);
    assert_eq!(cli(&["frobnicate"]).code, 64);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_diamond-gdof");
    let ok = Command::new(bin).args(["gdof", "--T", "3", "--gamma", "4,1,2,3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["gdof", "--T", "3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(64));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn repro_example_table() {
    let out = cli(&["repro-example", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(header, ["quantity", "value"]);
    let value = |q: &str| -> f64 { rows.iter().find(|r| r[0] == q).unwrap()[1].parse().unwrap() };
    assert!((value("simple_bound") - 2.0).abs() < 1e-12);
    assert!((value("relay1_alone") - 4.0 / 3.0).abs() < 1e-12);
    assert!((value("relay2_alone") - 2.0 / 3.0).abs() < 1e-12);
    assert!((value("training_achievable_x_T") - 4.0).abs() < 1e-12);
    assert!((value("training_upper_x_T") - 3.0).abs() < 1e-12);
    assert!((value("network_x_T") - 14.0 / 3.0).abs() < 1e-2);
    assert!((value("bilinear_grid_x_T") - 14.0 / 3.0).abs() < 1e-2);
}

#[test]
fn sweep_csv_and_slope() {
    let out = cli(&["sweep", "--T", "3", "--gamma", "4,1,2,3", "--snr-db", "60:120:10", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stderr.is_empty());
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(
        header,
        [
            "snr_db",
            "snr",
            "p_lambda",
            "c_r12_sq",
            "term_cap",
            "term_parallel",
            "term_miso",
            "binding",
            "rate_per_symbol",
            "block_rate"
        ]
    );
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert_eq!(r.len(), header.len());
        let terms: Vec<f64> = r[4..7].iter().map(|s| s.parse().unwrap()).collect();
        let block: f64 = r[9].parse().unwrap();
        assert_eq!(block, terms.iter().cloned().fold(f64::INFINITY, f64::min));
    }
    let v = json(&["sweep", "--T", "3", "--gamma", "4,1,2,3"]);
    assert!(v["result"]["rel_error"].as_f64().unwrap() <= 0.02);
}

#[test]
fn sweep_cutset_terms() {
    let out = cli(&["sweep", "--T", "3", "--gamma", "4,1,2,3", "--scheme", "cutset", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let (header, _) = csv_rows(&out.stdout);
    assert_eq!(header[4..7], ["term_cap", "term_broadcast", "term_parallel_cut"]);
}

#[test]
fn single_decade_sweep_warns() {
    let out = cli(&["sweep", "--T", "3", "--gamma", "4,1,2,3", "--snr-db", "60,70"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("warning"), "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["result"]["warning"].is_string());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lp.json");
    let out = cli(&["lp", "--T", "3", "--gamma", "4,1,2,3", "--snr-db", "20", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "lp");
    assert!(v["result"]["reduced"]["points"].as_array().unwrap().len() <= 2);
}

#[test]
fn verify_reports_each_check() {
    let out = cli(&["verify", "--samples", "2e4", "--format", "csv", "--seed", "3"]);
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(header, ["check", "estimate", "std_err", "bound_lo", "bound_hi", "pass"]);
    assert!(rows.len() > 20);
    let failed = rows.iter().any(|r| r[5] == "false");
    assert_eq!(out.code, if failed { 2 } else { 0 });
    assert!(rows.iter().filter(|r| r[0].starts_with("jensen")).all(|r| r[5] == "true"));
}
