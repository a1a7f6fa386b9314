//! Command-line front end for the `diamond-gdof` library.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use diamond_gdof::sweep::Scheme;

mod commands;
pub mod output;

pub use output::{Format, Report, Table};

/// Exit status for malformed command lines.
pub const EXIT_USAGE: i32 = 64;
/// Exit status for rejected parameters and failed checks.
pub const EXIT_INVALID: i32 = 2;
/// Exit status for solver and I/O failures.
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Internal(String),
    #[error("checks failed: {}", .0.join("; "))]
    ChecksFailed(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) | CliError::ChecksFailed(_) => EXIT_INVALID,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<diamond_gdof::Error> for CliError {
    fn from(e: diamond_gdof::Error) -> Self {
        match e {
            diamond_gdof::Error::Solver(_) => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "diamond-gdof", version, about = "gDoF analysis of the noncoherent two-relay diamond network")]
pub struct Cli {
    /// Base seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct NetArgs {
    /// Coherence time in symbols.
    #[arg(long = "T", alias = "coherence")]
    pub t: u32,
    /// Link exponents sr1,sr2,rd1,rd2.
    #[arg(long, value_parser = parse_gamma, allow_hyphen_values = true)]
    pub gamma: [f64; 4],
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regime of the exponent ordering.
    Classify(NetArgs),
    /// Network gDoF and the formula that produces it.
    Gdof(NetArgs),
    /// Closed-form and grid solutions of the bilinear program.
    Solve {
        #[command(flatten)]
        net: NetArgs,
        /// Grid points per axis.
        #[arg(long, default_value_t = 1001)]
        grid_res: usize,
    },
    /// Discretized LP over relay power laws at one snr, with its two-point reduction.
    Lp {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        #[arg(long, default_value_t = 0.5)]
        grid_step: f64,
        #[arg(long, default_value_t = 6.0)]
        grid_max: f64,
    },
    /// Finite-snr rate terms over an snr range and the fitted gDoF slope.
    Sweep {
        #[command(flatten)]
        net: NetArgs,
        /// Comma list or start:stop:step, in dB.
        #[arg(long, value_parser = parse_snr_list, default_value = "60:120:10", allow_hyphen_values = true)]
        snr_db: SnrList,
        #[arg(long, default_value_t = Scheme::Tsqmf)]
        scheme: Scheme,
    },
    /// Monte Carlo checks of the expectation bounds.
    Verify {
        #[arg(long, value_parser = parse_samples, default_value = "1e6")]
        samples: u64,
    },
    /// Draws blocks of the train-scale quantize-map-forward chain.
    Simulate {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        /// Defaults to the optimizer's operating point.
        #[arg(long)]
        p_lambda: Option<f64>,
        /// Defaults to the optimizer's operating point.
        #[arg(long)]
        c_r12_sq: Option<f64>,
        #[arg(long, default_value_t = 1)]
        blocks: u32,
    },
    /// Reproduces the T = 3, gamma = (4, 1, 2, 3) comparison.
    ReproExample {
        #[arg(long, default_value_t = 1001)]
        grid_res: usize,
    },
}

/// An snr list in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrList(pub Vec<f64>);

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

fn parse_gamma(s: &str) -> Result<[f64; 4], String> {
    let v = s.split(',').map(parse_f64).collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 4 comma-separated exponents, got {}", v.len()))
}

fn parse_snr_list(s: &str) -> Result<SnrList, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(SnrList(single.split(',').map(parse_f64).collect::<Result<_, _>>()?)),
        [start, stop, step] => {
            let (start, stop, step) = (parse_f64(start)?, parse_f64(stop)?, parse_f64(step)?);
            if step <= 0.0 || stop < start {
                return Err("range needs step > 0 and stop >= start".into());
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            if n > 10_000 {
                return Err("range has more than 10000 points".into());
            }
            Ok(SnrList((0..=n).map(|k| start + k as f64 * step).collect()))
        }
        _ => Err(format!("expected a comma list or start:stop:step, got {s:?}")),
    }
}

/// Accepts integers and scientific notation such as `1e6`.
fn parse_samples(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let v = parse_f64(s)?;
    if v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("sample count must be a positive integer, got {s:?}"))
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first), runs the command and captures output.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut stderr = String::new();
    let fail = |e: CliError, mut stderr: String| {
        stderr.push_str(&format!("error: {e}\n"));
        Outcome { code: e.exit_code(), stdout: String::new(), stderr }
    };
    let report = match commands::execute(&cli) {
        Ok(r) => r,
        Err(e) => return fail(e, stderr),
    };
    for w in &report.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    let text = match report.render(commands::name(&cli.command), cli.seed, cli.format) {
        Ok(t) => t,
        Err(e) => return fail(e, stderr),
    };
    let stdout = match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => String::new(),
            Err(e) => return fail(e.into(), stderr),
        },
        None => text,
    };
    if report.failed_checks.is_empty() {
        return Outcome { code: 0, stdout, stderr };
    }
    let e = CliError::ChecksFailed(report.failed_checks);
    stderr.push_str(&format!("error: {e}\n"));
    Outcome { code: e.exit_code(), stdout, stderr }
}
