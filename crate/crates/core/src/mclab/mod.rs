//! Monte Carlo verification of the expectation bounds and of the
//! train-scale signal chain.

pub mod lemmas;
pub mod report;
pub mod theorem7;
pub mod tsqmf_sim;

pub use lemmas::{
    lemma11_closed_bound, mc_exp_reciprocal, mc_jensen_chisq, mc_jensen_exponential, mc_lemma11, Lemma11Report,
};
pub use report::LemmaReport;
pub use theorem7::{mc_theorem7_components, Theorem7Report, Theorem7Row};
pub use tsqmf_sim::{draw_tsqmf_block, make_ghat, sim_tsqmf_block, TsqmfCoeffs, TsqmfRealization};
