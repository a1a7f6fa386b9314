//! JSON envelope and CSV tables.

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Envelope<'a> {
    pub command: &'a str,
    pub params: &'a Value,
    pub result: &'a Value,
    pub meta: Meta,
}

/// Header plus rows, rendered as RFC 4180 CSV.
#[derive(Debug, Default, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }
}

/// `{}` formatting of `f64` is shortest round-trip and locale independent.
pub fn num(v: f64) -> String {
    format!("{v}")
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Command output before formatting.
pub struct Report {
    pub params: Value,
    pub result: Value,
    pub table: Table,
    /// Set when the command ran but a check it performs did not hold.
    pub failed_checks: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(params: Value, result: impl Serialize, table: Table) -> Result<Self, CliError> {
        Ok(Report { params, result: serde_json::to_value(result)?, table, failed_checks: Vec::new(), warnings: Vec::new() })
    }

    pub fn render(&self, command: &str, seed: u64, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let env = Envelope {
                    command,
                    params: &self.params,
                    result: &self.result,
                    meta: Meta { seed, version: env!("CARGO_PKG_VERSION") },
                };
                let mut s = serde_json::to_string_pretty(&env)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.table.to_csv(),
        }
    }
}
