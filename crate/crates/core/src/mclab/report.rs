use serde::{Deserialize, Serialize};

use crate::mc::Estimate;

/// Number of standard errors allowed outside a bound.
pub const SE_MULTIPLIER: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub estimate: f64,
    pub std_err: f64,
    pub bound_lo: f64,
    pub bound_hi: f64,
    /// Exact value, when one is known in closed form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    pub pass: bool,
    pub samples: u64,
}

impl LemmaReport {
    pub fn new(lemma_id: &str, est: Estimate, bound_lo: f64, bound_hi: f64, reference: Option<f64>) -> Self {
        let slack = SE_MULTIPLIER * est.std_err;
        let in_bounds = bound_lo - slack <= est.mean && est.mean <= bound_hi + slack;
        let matches_reference = reference.map_or(true, |r| est.covers(r, SE_MULTIPLIER));
        LemmaReport {
            lemma_id: lemma_id.to_string(),
            estimate: est.mean,
            std_err: est.std_err,
            bound_lo,
            bound_hi,
            reference,
            pass: in_bounds && matches_reference,
            samples: est.samples,
        }
    }
}
