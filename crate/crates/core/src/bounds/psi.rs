//! Per-point cut expressions and their averages over mass-point laws.

use crate::error::{Error, Result};
use crate::model::{LinkGains, MassPoint, MassPointDistribution, NetworkParams};

const POWER_TOL: f64 = 1e-9;

#[inline]
fn joint(a2: f64, b2: f64, c2: f64, rd1: f64, rd2: f64) -> (f64, f64) {
    let s = rd2 * a2 + rd1 * b2 + rd1 * c2;
    (s, s + rd1 * rd2 * c2 * a2 + 1.0)
}

/// Broadcast-cut integrand at one power triple.
#[inline]
pub fn f1(a2: f64, b2: f64, c2: f64, rd1: f64, rd2: f64, t: u32) -> f64 {
    let tf = f64::from(t);
    let (s, d) = joint(a2, b2, c2, rd1, rd2);
    tf * (s + tf).log2() - d.log2()
}

/// Parallel-cut integrand at one power triple.
#[inline]
pub fn f2(a2: f64, b2: f64, c2: f64, rd1: f64, rd2: f64, t: u32) -> f64 {
    let tm1 = f64::from(t) - 1.0;
    let (_, d) = joint(a2, b2, c2, rd1, rd2);
    let tail = if t > 1 { tm1 * (rd1 * c2 + tm1).log2() } else { 0.0 };
    (rd2 * a2 + rd1 * b2 + 1.0).log2() + tail - d.log2()
}

fn average(dist: &MassPointDistribution, f: impl Fn(&MassPoint) -> f64) -> f64 {
    dist.points.iter().filter(|q| q.p > 0.0).map(|q| q.p * f(q)).sum()
}

pub fn psi1(dist: &MassPointDistribution, rho_rd1_sq: f64, rho_rd2_sq: f64, t: u32) -> f64 {
    average(dist, |q| f1(q.a2, q.b2, q.c2, rho_rd1_sq, rho_rd2_sq, t))
}

pub fn psi2(dist: &MassPointDistribution, rho_rd1_sq: f64, rho_rd2_sq: f64, t: u32) -> f64 {
    average(dist, |q| f2(q.a2, q.b2, q.c2, rho_rd1_sq, rho_rd2_sq, t))
}

/// `min{psi1, (T-1) log2 rho_sr2^2 + psi2}` without any power check.
pub fn cut_objective(dist: &MassPointDistribution, gains: &LinkGains, t: u32) -> f64 {
    let first = psi1(dist, gains.rd1, gains.rd2, t);
    let second = (f64::from(t) - 1.0) * gains.sr2.log2() + psi2(dist, gains.rd1, gains.rd2, t);
    first.min(second)
}

/// Reduced cut-set objective for a law meeting both relay power budgets.
pub fn cutset_objective(dist: &MassPointDistribution, params: &NetworkParams) -> Result<f64> {
    params.validate()?;
    dist.validate()?;
    let t = params.t();
    let (r2, r1) = dist.relay_powers();
    if r2 > t * (1.0 + POWER_TOL) || r1 > t * (1.0 + POWER_TOL) {
        return Err(Error::contract(format!(
            "relay mean powers ({r2}, {r1}) exceed the per-relay budget {t}"
        )));
    }
    Ok(cut_objective(dist, &params.gains()?, params.coherence))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        let d = MassPointDistribution::point_mass(0.0, 0.0, 0.0);
        assert!((psi1(&d, 5.0, 7.0, 3) - 3.0 * 3f64.log2()).abs() < 1e-12);
        assert!((psi2(&d, 5.0, 7.0, 3) - 2.0).abs() < 1e-12);
        assert_eq!(psi2(&d, 5.0, 7.0, 1), 0.0);
    }

    #[test]
    fn cross_term_couples_a_and_c() {
        let with = f1(2.0, 0.0, 1.0, 4.0, 8.0, 3);
        let (s, _) = joint(2.0, 0.0, 1.0, 4.0, 8.0);
        let without = 3.0 * (s + 3.0).log2() - (s + 1.0).log2();
        assert!((without - with - ((s + 1.0 + 64.0) / (s + 1.0)).log2()).abs() < 1e-12);
    }
}
