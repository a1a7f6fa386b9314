//! Finite-snr evaluation of cut expressions, scheme rates and log-det
//! entropy formulas.

pub mod linalg;
pub mod miso;
pub mod psi;
pub mod tsqmf;

pub use linalg::{logdet_identity_check, logdet_identity_error};
pub use miso::{miso_cond_entropy, MisoReport};
pub use psi::{cut_objective, cutset_objective, psi1, psi2};
pub use tsqmf::{scheme_operating_point, tsqmf_rate_bound, RateReport, RateTerm};
