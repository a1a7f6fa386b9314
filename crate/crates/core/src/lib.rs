//! gDoF analysis for the noncoherent two-relay diamond network.
//!
//! The crate covers regime classification, closed-form gDoF values, the
//! upper-bound optimization pipeline, finite-SNR bound and rate evaluation,
//! and Monte Carlo checks of the supporting expectation bounds.

pub mod bounds;
pub mod error;
pub mod fit;
pub mod gdof;
pub mod mc;
pub mod mclab;
pub mod model;
pub mod optim;
pub mod regime;
pub mod sampling;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};
pub use model::{Exponents, LinkGains, MassPoint, MassPointDistribution, NetworkParams};
pub use regime::{Regime, RegimeKind, Relay};
