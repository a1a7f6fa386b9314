//! Finite-difference check of the gradient bound on the cut integrands.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::psi::{f1, f2};
use crate::error::{Error, Result};
use crate::model::LinkGains;
use crate::sampling::stream_rng;

pub const FD_REL_STEP: f64 = 1e-5;
pub const BOUND_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientReport {
    pub samples: usize,
    pub max_partial_f1: f64,
    pub max_norm_f1: f64,
    pub max_partial_f2: f64,
    pub max_norm_f2: f64,
    /// `2 rho_rd2^2`.
    pub partial_bound: f64,
    /// `2 sqrt(3) rho_rd2^2`.
    pub norm_bound: f64,
    pub pass: bool,
}

/// Central-difference gradient of `f` at `x`.
pub fn fd_gradient(f: impl Fn([f64; 3]) -> f64, x: [f64; 3], scale: f64) -> [f64; 3] {
    let mut g = [0.0; 3];
    for i in 0..3 {
        let h = FD_REL_STEP * x[i].abs().max(1.0 / scale);
        let (mut hi, mut lo) = (x, x);
        hi[i] += h;
        lo[i] -= h;
        g[i] = (f(hi) - f(lo)) / (2.0 * h);
    }
    g
}

/// Evaluates both cut gradients at the origin and at `n_samples - 1` uniform
/// draws from `{a, b, c >= 0, a + b + c <= 2T}`.
pub fn grad_f2_bound_check(gains: &LinkGains, t: u32, n_samples: usize, seed: u64) -> Result<GradientReport> {
    gains.validate()?;
    if n_samples < 1 {
        return Err(Error::param("n_samples must be >= 1"));
    }
    if t < 1 {
        return Err(Error::param("coherence time must be >= 1"));
    }
    let budget = 2.0 * f64::from(t);
    let mut rng = stream_rng(seed, 0);
    let mut pts = vec![[0.0; 3]];
    while pts.len() < n_samples {
        let x = [rng.random::<f64>() * budget, rng.random::<f64>() * budget, rng.random::<f64>() * budget];
        if x.iter().sum::<f64>() <= budget {
            pts.push(x);
        }
    }

    let (r1, r2) = (gains.rd1, gains.rd2);
    let scale = r2.max(1.0);
    let mut rep = GradientReport {
        samples: n_samples,
        max_partial_f1: 0.0,
        max_norm_f1: 0.0,
        max_partial_f2: 0.0,
        max_norm_f2: 0.0,
        partial_bound: 2.0 * r2,
        norm_bound: 2.0 * 3f64.sqrt() * r2,
        pass: false,
    };
    for x in pts {
        let g1 = fd_gradient(|[a, b, c]| f1(a, b, c, r1, r2, t), x, scale);
        let g2 = fd_gradient(|[a, b, c]| f2(a, b, c, r1, r2, t), x, scale);
        let norm = |g: [f64; 3]| g.iter().map(|v| v * v).sum::<f64>().sqrt();
        let max_abs = |g: [f64; 3]| g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        rep.max_partial_f1 = rep.max_partial_f1.max(max_abs(g1));
        rep.max_partial_f2 = rep.max_partial_f2.max(max_abs(g2));
        rep.max_norm_f1 = rep.max_norm_f1.max(norm(g1));
        rep.max_norm_f2 = rep.max_norm_f2.max(norm(g2));
    }
    let slack = 1.0 + BOUND_TOL;
    rep.pass = [rep.max_partial_f1, rep.max_partial_f2].iter().all(|&v| v <= rep.partial_bound * slack)
        && [rep.max_norm_f1, rep.max_norm_f2].iter().all(|&v| v <= rep.norm_bound * slack);
    Ok(rep)
}
