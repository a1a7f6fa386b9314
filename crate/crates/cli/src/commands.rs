use diamond_gdof::bounds::{cut_objective, logdet_identity_error, scheme_operating_point};
use diamond_gdof::fit::linear_fit;
use diamond_gdof::gdof::{self, Subregime};
use diamond_gdof::mc::McConfig;
use diamond_gdof::mclab::{
    draw_tsqmf_block, mc_exp_reciprocal, mc_jensen_chisq, mc_jensen_exponential, mc_lemma11, mc_theorem7_components,
    LemmaReport, TsqmfCoeffs, TsqmfRealization,
};
use diamond_gdof::optim::{
    case_split, grad_f2_bound_check, lipschitz_cell_bound, reduce_to_two_points, solve_p1_closed,
    solve_p1_closed_with_case, solve_p1_grid, solve_p4_lp, OptSolution,
};
use diamond_gdof::regime::{canonicalize, classify, permutation};
use diamond_gdof::sampling::stream_rng;
use diamond_gdof::sweep::{db_to_linear, sweep_slope};
use num_complex::Complex64;
use diamond_gdof::{Exponents, LinkGains, MassPointDistribution, NetworkParams, RegimeKind};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{num, opt_num, Report, Table};
use crate::{Cli, CliError, Command, NetArgs};

const MAX_BLOCKS: u32 = 100_000;
const MAX_GRID_RES: usize = 100_000;

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify(_) => "classify",
        Command::Gdof(_) => "gdof",
        Command::Solve { .. } => "solve",
        Command::Lp { .. } => "lp",
        Command::Sweep { .. } => "sweep",
        Command::Verify { .. } => "verify",
        Command::Simulate { .. } => "simulate",
        Command::ReproExample { .. } => "repro-example",
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify(net) => classify_cmd(net),
        Command::Gdof(net) => gdof_cmd(net),
        Command::Solve { net, grid_res } => solve_cmd(net, *grid_res),
        Command::Lp { net, snr_db, grid_step, grid_max } => lp_cmd(net, *snr_db, *grid_step, *grid_max),
        Command::Sweep { net, snr_db, scheme } => {
            let params = network(net)?;
            let r = sweep_slope(&params, &snr_db.0, *scheme)?;
            let names: Vec<String> = r.rows.first().map_or(Vec::new(), |row| {
                row.report.terms.iter().map(|t| t.name.clone()).collect()
            });
            let mut header = vec!["snr_db".to_string(), "snr".into(), "p_lambda".into(), "c_r12_sq".into()];
            header.extend(names.iter().map(|n| format!("term_{n}")));
            header.extend(["binding".into(), "rate_per_symbol".into(), "block_rate".into()]);
            let mut table = Table::new(header);
            for row in &r.rows {
                let mut cells = vec![num(row.snr_db), num(row.snr), num(row.p_lambda), num(row.c_r12_sq)];
                cells.extend(names.iter().map(|n| opt_num(row.report.term(n))));
                cells.push(row.report.binding.clone());
                cells.push(num(row.report.rate_per_symbol));
                cells.push(num(row.report.rate_per_symbol * params.t()));
                table.push(cells);
            }
            let params_json = json!({"T": net.t, "gamma": net.gamma, "snr_db": snr_db.0, "scheme": scheme});
            let mut report = Report::new(params_json, &r, table)?;
            report.warnings.extend(r.warning.clone());
            Ok(report)
        }
        Command::Verify { samples } => verify_cmd(*samples, cli.seed),
        Command::Simulate { net, snr_db, p_lambda, c_r12_sq, blocks } => {
            simulate_cmd(net, *snr_db, *p_lambda, *c_r12_sq, *blocks, cli.seed)
        }
        Command::ReproExample { grid_res } => repro_cmd(*grid_res),
    }
}

fn network(net: &NetArgs) -> Result<NetworkParams, CliError> {
    Ok(NetworkParams::new(net.t, Exponents::from_array(net.gamma))?)
}

fn net_json(net: &NetArgs) -> Value {
    json!({"T": net.t, "gamma": net.gamma})
}

fn check_grid_res(grid_res: usize) -> Result<(), CliError> {
    if (2..=MAX_GRID_RES).contains(&grid_res) {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("grid resolution must lie in [2, {MAX_GRID_RES}], got {grid_res}")))
    }
}

#[derive(Serialize)]
struct ClassifyOut {
    regime: String,
    selected_relay: Option<u8>,
    swapped: bool,
    permutation_index: u8,
    /// Link labels strongest first, 1 = sr1, 2 = sr2, 3 = rd1, 4 = rd2.
    ordering: Option<[u8; 4]>,
}

fn classify_cmd(net: &NetArgs) -> Result<Report, CliError> {
    let r = classify(&network(net)?)?;
    let out = ClassifyOut {
        regime: r.kind.to_string(),
        selected_relay: r.selected_relay.map(u8::from),
        swapped: r.swapped,
        permutation_index: r.permutation_index,
        ordering: permutation(r.permutation_index),
    };
    let mut table = Table::new(["regime", "selected_relay", "swapped", "permutation_index"]);
    table.push(vec![
        out.regime.clone(),
        out.selected_relay.map(|v| v.to_string()).unwrap_or_default(),
        out.swapped.to_string(),
        out.permutation_index.to_string(),
    ]);
    Report::new(net_json(net), out, table)
}

#[derive(Serialize)]
struct GdofOut {
    gdof: f64,
    t_times_gdof: f64,
    regime: String,
    swapped: bool,
    subregime: Option<Subregime>,
    active_formula: String,
    relay_used: gdof::RelayUse,
}

fn gdof_cmd(net: &NetArgs) -> Result<Report, CliError> {
    let params = network(net)?;
    let r = gdof::gdof_network(&params)?;
    let subregime = (r.regime.kind == RegimeKind::Nontrivial)
        .then(|| canonicalize(&params).map(|(c, _)| gdof::subregime(&c)))
        .transpose()?;
    let out = GdofOut {
        gdof: r.gdof,
        t_times_gdof: params.t() * r.gdof,
        regime: r.regime.kind.to_string(),
        swapped: r.regime.swapped,
        subregime,
        active_formula: r.active_formula,
        relay_used: r.relay_used,
    };
    let mut table = Table::new(["gdof", "t_times_gdof", "regime", "subregime", "active_formula", "relay_used"]);
    table.push(vec![
        num(out.gdof),
        num(out.t_times_gdof),
        out.regime.clone(),
        out.subregime.map(|s| s.to_string()).unwrap_or_default(),
        out.active_formula.clone(),
        serde_json::to_value(out.relay_used)?.as_str().unwrap_or_default().to_string(),
    ]);
    Report::new(net_json(net), out, table)
}

#[derive(Serialize)]
struct SolveOut {
    swapped: bool,
    subregime: Subregime,
    closed: OptSolution,
    grid: OptSolution,
    grid_res: usize,
    lipschitz_cell_bound: f64,
    /// Closed-form value minus grid value.
    gap: f64,
}

fn solve_row(table: &mut Table, method: &str, s: &OptSolution) -> Result<(), CliError> {
    let active = serde_json::to_value(s.active_term)?;
    table.push(vec![
        method.to_string(),
        num(s.p_lambda),
        num(s.gamma_c),
        num(s.value),
        active.as_str().unwrap_or_default().to_string(),
    ]);
    Ok(())
}

fn solve_cmd(net: &NetArgs, grid_res: usize) -> Result<Report, CliError> {
    check_grid_res(grid_res)?;
    let (canon, swapped) = canonicalize(&network(net)?)?;
    let (closed, subregime) = solve_p1_closed_with_case(&canon)?;
    let grid = solve_p1_grid(&canon, grid_res)?;
    let out = SolveOut {
        swapped,
        subregime,
        closed,
        grid,
        grid_res,
        lipschitz_cell_bound: lipschitz_cell_bound(&canon, grid_res),
        gap: closed.value - grid.value,
    };
    let mut table = Table::new(["method", "p_lambda", "gamma_c", "value", "active_term"]);
    solve_row(&mut table, "closed", &closed)?;
    solve_row(&mut table, "grid", &grid)?;
    let mut params = net_json(net);
    params["grid_res"] = json!(grid_res);
    Report::new(params, out, table)
}

#[derive(Serialize)]
struct LpOut {
    snr: f64,
    log2_snr: f64,
    value: f64,
    grid_points: usize,
    pivots: usize,
    dist: MassPointDistribution,
    reduced: MassPointDistribution,
    reduced_value: f64,
    /// LP value minus the value of the two-point law, in bits.
    drop: f64,
    value_per_log2_snr: f64,
    /// Closed-form bilinear value when both relays are needed.
    closed_value: Option<f64>,
}

fn lp_cmd(net: &NetArgs, snr_db: f64, grid_step: f64, grid_max: f64) -> Result<Report, CliError> {
    if !(grid_step > 0.0 && grid_max >= 0.0) {
        return Err(CliError::Invalid("grid step must be > 0 and grid max >= 0".into()));
    }
    let side = (grid_max / grid_step + 1e-9).floor() + 1.0;
    if side.powi(3) > diamond_gdof::optim::lp::MAX_GRID_POINTS as f64 {
        return Err(CliError::Invalid(format!(
            "grid of {side} values per axis exceeds {} points",
            diamond_gdof::optim::lp::MAX_GRID_POINTS
        )));
    }
    let params = network(net)?.with_snr(db_to_linear(snr_db))?;
    let gains = params.gains()?;
    let s = solve_p4_lp(&gains, net.t, grid_step, grid_max)?;
    let reduced = reduce_to_two_points(&case_split(&s.dist, &gains), &gains)?;
    let reduced_value = cut_objective(&reduced, &gains, net.t);
    let snr = params.snr()?;
    let (canon, _) = canonicalize(&params)?;
    let closed_value = (classify(&canon)?.kind == RegimeKind::Nontrivial)
        .then(|| solve_p1_closed(&canon).map(|c| c.value))
        .transpose()?;
    let mut table = Table::new(["law", "a2", "b2", "c2", "p"]);
    for (law, d) in [("lp", &s.dist), ("reduced", &reduced)] {
        for m in &d.points {
            table.push(vec![law.to_string(), num(m.a2), num(m.b2), num(m.c2), num(m.p)]);
        }
    }
    let out = LpOut {
        snr,
        log2_snr: snr.log2(),
        value: s.value,
        grid_points: s.grid_points,
        pivots: s.pivots,
        dist: s.dist,
        reduced,
        reduced_value,
        drop: s.value - reduced_value,
        value_per_log2_snr: s.value / snr.log2(),
        closed_value,
    };
    let mut params_json = net_json(net);
    params_json["snr_db"] = json!(snr_db);
    params_json["grid_step"] = json!(grid_step);
    params_json["grid_max"] = json!(grid_max);
    Report::new(params_json, out, table)
}

#[derive(Serialize)]
struct CheckRow {
    check: String,
    estimate: Option<f64>,
    std_err: Option<f64>,
    bound_lo: Option<f64>,
    bound_hi: Option<f64>,
    pass: bool,
}

impl CheckRow {
    fn lemma(check: String, r: &LemmaReport) -> Self {
        CheckRow {
            check,
            estimate: Some(r.estimate),
            std_err: Some(r.std_err),
            bound_lo: Some(r.bound_lo),
            bound_hi: Some(r.bound_hi),
            pass: r.pass,
        }
    }

    fn value(check: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        CheckRow {
            check: check.into(),
            estimate: Some(value),
            std_err: None,
            bound_lo: Some(lo),
            bound_hi: Some(hi),
            pass: (lo..=hi).contains(&value),
        }
    }

    fn flag(check: impl Into<String>, pass: bool) -> Self {
        CheckRow { check: check.into(), estimate: None, std_err: None, bound_lo: None, bound_hi: None, pass }
    }
}

fn verify_cmd(samples: u64, seed: u64) -> Result<Report, CliError> {
    let base = McConfig::new(samples, seed);
    base.validate()?;
    let mut salt = 0;
    let mut mc = || {
        salt += 1;
        base.reseeded(salt)
    };
    let mut rows = Vec::new();
    for (a, b, mu) in [(0.0, 1.0, 1.0), (10.0, 1.0, 1.0), (1.0, 2.0, 0.5)] {
        let r = mc_jensen_exponential(a, b, mu, &mc())?;
        rows.push(CheckRow::lemma(format!("jensen_exponential(a={a},b={b},mu={mu})"), &r));
    }
    for (a, b, dof) in [(0.0, 1.0, 2), (0.0, 1.0, 6), (1.0, 0.5, 100)] {
        let r = mc_jensen_chisq(a, b, dof, &mc())?;
        rows.push(CheckRow::lemma(format!("jensen_chisq(a={a},b={b},dof={dof})"), &r));
    }
    for (b, mu) in [(1.0, 1.0), (100.0, 1.0), (0.01, 1.0)] {
        let r = mc_exp_reciprocal(b, mu, &mc())?;
        rows.push(CheckRow::lemma(format!("exp_reciprocal(b={b},mu={mu})"), &r));
    }
    let rhos = [1e2, 1e3, 1e4];
    let mut logs = Vec::new();
    for rho in rhos {
        let r = mc_lemma11(rho, &mc())?;
        rows.push(CheckRow::lemma(format!("noise_correlation(rho_sq={rho})"), &r.report));
        rows.push(CheckRow::flag(format!("noise_correlation_angular(rho_sq={rho})"), r.angular_agrees));
        logs.push(r.report.estimate.log2());
    }
    let xs: Vec<f64> = rhos.iter().map(|r| r.log2()).collect();
    let slope = linear_fit(&xs, &logs)?.slope;
    rows.push(CheckRow::value("noise_correlation_slope", slope, -1.05, -0.95));
    for rd2 in [2.0, 8.0, 16.0] {
        let r = grad_f2_bound_check(&LinkGains::new(1.0, 1.0, rd2 / 2.0, rd2), 3, 1000, mc().seed)?;
        let mut row = CheckRow::value(format!("gradient_bound(rho_rd2_sq={rd2})"), r.max_norm_f2, 0.0, r.norm_bound);
        row.pass = r.pass;
        rows.push(row);
    }
    for (m, t) in [(1, 3), (2, 4), (3, 6)] {
        let worst = (0..100).map(|s| logdet_identity_error(m, t, seed.wrapping_add(s))).try_fold(0.0, |acc, e| {
            e.map(|e| f64::max(acc, e))
        })?;
        rows.push(CheckRow::value(format!("logdet_identity(M={m},T={t})"), worst, 0.0, 1e-9));
    }
    let t7 = mc_theorem7_components(&[1e2, 1e4, 1e6], 3, &mc())?;
    rows.push(CheckRow::flag("train_scale_gaps_nonnegative", t7.gaps_nonnegative));
    rows.push(CheckRow::flag("train_scale_reciprocal_moment", t7.reciprocal_agrees));
    rows.push(CheckRow::flag("train_scale_log_moment_sandwich", t7.jensen_gap_holds));
    rows.push(CheckRow::flag("train_scale_quantizer_constant", t7.quantizer_constant_ok));
    if let (Some(a), Some(b)) = (t7.slope_log_ratio, t7.slope_entropy_bound) {
        rows.push(CheckRow::value("train_scale_scaling_slope", a, -0.05, 0.05));
        rows.push(CheckRow::value("train_scale_entropy_slope", b, -1.05, -0.95));
    }

    let mut table = Table::new(["check", "estimate", "std_err", "bound_lo", "bound_hi", "pass"]);
    for r in &rows {
        table.push(vec![
            r.check.clone(),
            opt_num(r.estimate),
            opt_num(r.std_err),
            opt_num(r.bound_lo),
            opt_num(r.bound_hi),
            r.pass.to_string(),
        ]);
    }
    let failed: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| r.check.clone()).collect();
    let result = json!({"pass": failed.is_empty(), "checks": rows, "train_scale": t7});
    let mut report = Report::new(json!({"samples": samples}), result, table)?;
    report.failed_checks = failed;
    Ok(report)
}

#[derive(Serialize)]
struct SimulateOut {
    swapped: bool,
    p_lambda: f64,
    c_r12_sq: f64,
    coeffs: TsqmfCoeffs,
    blocks: Vec<TsqmfRealization>,
}

fn mean_power(v: &[Complex64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>() / v.len() as f64
    }
}

fn simulate_cmd(
    net: &NetArgs,
    snr_db: f64,
    p_lambda: Option<f64>,
    c_r12_sq: Option<f64>,
    blocks: u32,
    seed: u64,
) -> Result<Report, CliError> {
    if !(1..=MAX_BLOCKS).contains(&blocks) {
        return Err(CliError::Invalid(format!("blocks must lie in [1, {MAX_BLOCKS}], got {blocks}")));
    }
    let (canon, swapped) = canonicalize(&network(net)?.with_snr(db_to_linear(snr_db))?)?;
    if canon.coherence < 2 {
        return Err(CliError::Invalid("coherence time must be >= 2".into()));
    }
    let (p, c) = match (p_lambda, c_r12_sq) {
        (Some(p), Some(c)) => (p, c),
        (p, c) => {
            let (p0, c0) = scheme_operating_point(&canon)?;
            (p.unwrap_or(p0), c.unwrap_or(c0))
        }
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Invalid(format!("p_lambda must lie in [0, 1], got {p}")));
    }
    let coeffs = TsqmfCoeffs::from_c_r12_sq(c)?;
    let gains = canon.gains()?;
    let draws: Vec<TsqmfRealization> = (0..blocks)
        .map(|b| draw_tsqmf_block(&mut stream_rng(seed, u64::from(b)), &gains, canon.coherence, p, &coeffs))
        .collect();

    let mut table = Table::new([
        "block",
        "lambda",
        "relay",
        "g_re",
        "g_im",
        "ghat_re",
        "ghat_im",
        "y_hat_power",
        "x_relay_power",
    ]);
    for (b, d) in draws.iter().enumerate() {
        for (i, r) in d.relays.iter().enumerate() {
            table.push(vec![
                b.to_string(),
                d.lambda.to_string(),
                (i + 1).to_string(),
                num(r.g.re),
                num(r.g.im),
                num(r.ghat.re),
                num(r.ghat.im),
                num(mean_power(&r.y_hat)),
                num(mean_power(&r.x_relay)),
            ]);
        }
    }
    let mut params_json = net_json(net);
    params_json["snr_db"] = json!(snr_db);
    params_json["blocks"] = json!(blocks);
    let out = SimulateOut { swapped, p_lambda: p, c_r12_sq: c, coeffs, blocks: draws };
    Report::new(params_json, out, table)
}

fn repro_cmd(grid_res: usize) -> Result<Report, CliError> {
    check_grid_res(grid_res)?;
    let t = 3;
    let gamma = [4.0, 1.0, 2.0, 3.0];
    let p = NetworkParams::new(t, Exponents::from_array(gamma))?;
    let g = p.gamma;
    let pre = 1.0 - 1.0 / p.t();
    let (train, train_ub) = gdof::gdof_training(&p)?;
    let closed = solve_p1_closed(&p)?.value;
    let grid = solve_p1_grid(&p, grid_res)?.value;
    let network = gdof::gdof_network(&p)?.gdof * p.t();
    let rows = [
        ("simple_bound", gdof::gdof_simple_bound(&p)),
        ("relay1_alone", pre * g.sr1.min(g.rd1)),
        ("relay2_alone", pre * g.sr2.min(g.rd2)),
        ("training_achievable_x_T", train * p.t()),
        ("training_upper_x_T", train_ub * p.t()),
        ("bilinear_closed_x_T", closed),
        ("bilinear_grid_x_T", grid),
        ("network_x_T", network),
    ];
    let mut table = Table::new(["quantity", "value"]);
    for (q, v) in rows {
        table.push(vec![q.to_string(), num(v)]);
    }
    let mut report = Report::new(
        json!({"T": t, "gamma": gamma, "grid_res": grid_res}),
        rows.iter().map(|(q, v)| (q.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        table,
    )?;
    if !(network > train * p.t() && train > train_ub) {
        report.failed_checks.push("network value above training values".into());
    }
    if (closed - grid).abs() > 1e-2 {
        report.failed_checks.push(format!("closed {closed} and grid {grid} differ"));
    }
    Ok(report)
}
