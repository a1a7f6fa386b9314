//! Discretized cut-set program over relay power laws, solved as an LP, and
//! the support reductions applied to its solution.

use serde::{Deserialize, Serialize};

use crate::bounds::psi::{f1, f2};
use crate::error::{Error, Result};
use crate::model::{LinkGains, MassPoint, MassPointDistribution};
use crate::optim::simplex::{Constraint, LinearProgram, Relation};

/// Largest grid the LP accepts.
pub const MAX_GRID_POINTS: usize = 1 << 15;

/// Probabilities below this are treated as zero in the returned law.
const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct P4Solution {
    pub dist: MassPointDistribution,
    pub value: f64,
    pub grid_points: usize,
    pub pivots: usize,
}

/// Maximizes `min{E f1, (T-1) log2 rho_sr2^2 + E f2}` over laws supported on
/// `{0, step, .., max}^3` with `E[a + b + c] <= 2T`.
pub fn solve_p4_lp(gains: &LinkGains, t: u32, grid_step: f64, grid_max: f64) -> Result<P4Solution> {
    gains.validate()?;
    if t < 1 {
        return Err(Error::param("coherence time must be >= 1"));
    }
    if !(grid_step.is_finite() && grid_step > 0.0) {
        return Err(Error::param(format!("grid step must be finite and > 0, got {grid_step}")));
    }
    if !(grid_max.is_finite() && grid_max >= 0.0) {
        return Err(Error::param(format!("grid max must be finite and >= 0, got {grid_max}")));
    }
    let side = (grid_max / grid_step + 1e-9).floor() as usize + 1;
    let total = side.checked_pow(3).filter(|&n| n <= MAX_GRID_POINTS).ok_or_else(|| {
        Error::Solver(format!("grid with {side} values per axis exceeds {MAX_GRID_POINTS} points"))
    })?;

    let mut grid = Vec::with_capacity(total);
    for i in 0..side {
        for j in 0..side {
            for k in 0..side {
                grid.push([i as f64 * grid_step, j as f64 * grid_step, k as f64 * grid_step]);
            }
        }
    }

    let n = grid.len() + 1;
    let epi = n - 1;
    let mut cut1 = vec![0.0; n];
    let mut cut2 = vec![0.0; n];
    let mut power = vec![0.0; n];
    let mut norm = vec![0.0; n];
    for (idx, &[a, b, c]) in grid.iter().enumerate() {
        cut1[idx] = -f1(a, b, c, gains.rd1, gains.rd2, t);
        cut2[idx] = -f2(a, b, c, gains.rd1, gains.rd2, t);
        power[idx] = a + b + c;
        norm[idx] = 1.0;
    }
    cut1[epi] = 1.0;
    cut2[epi] = 1.0;
    let offset = (f64::from(t) - 1.0) * gains.sr2.log2();
    let mut objective = vec![0.0; n];
    objective[epi] = 1.0;

    let lp = LinearProgram {
        objective,
        constraints: vec![
            Constraint { coeffs: cut1, relation: Relation::Le, rhs: 0.0 },
            Constraint { coeffs: cut2, relation: Relation::Le, rhs: offset },
            Constraint { coeffs: power, relation: Relation::Le, rhs: 2.0 * f64::from(t) },
            Constraint { coeffs: norm, relation: Relation::Eq, rhs: 1.0 },
        ],
    };
    let sol = lp.solve()?;

    let mut points: Vec<MassPoint> = grid
        .iter()
        .zip(&sol.x)
        .filter(|(_, &p)| p > SUPPORT_TOL)
        .map(|(&[a, b, c], &p)| MassPoint::new(a, b, c, p))
        .collect();
    let mass: f64 = points.iter().map(|q| q.p).sum();
    if points.is_empty() || (mass - 1.0).abs() > 1e-6 {
        return Err(Error::Solver(format!("degenerate solution with total mass {mass}")));
    }
    for q in &mut points {
        q.p /= mass;
    }
    Ok(P4Solution { dist: MassPointDistribution { points }, value: sol.value, grid_points: total, pivots: sol.pivots })
}

/// Maps each point to `(a, 0, c)` when the second relay's received power
/// dominates, and to `(0, d, d)` with `d = (b + c) / 2` otherwise.
pub fn case_split(dist: &MassPointDistribution, gains: &LinkGains) -> MassPointDistribution {
    let points = dist
        .points
        .iter()
        .map(|q| {
            if gains.rd2 * q.a2 >= (gains.rd1 * q.b2).max(gains.rd1 * q.c2) {
                MassPoint::new(q.a2, 0.0, q.c2, q.p)
            } else {
                let d = 0.5 * (q.b2 + q.c2);
                MassPoint::new(0.0, d, d, q.p)
            }
        })
        .collect();
    MassPointDistribution { points }
}

enum Family {
    Split,
    Diagonal,
}

fn family(q: &MassPoint) -> Option<Family> {
    if q.b2 == 0.0 {
        Some(Family::Split)
    } else if q.a2 == 0.0 && (q.b2 - q.c2).abs() <= 1e-12 * q.b2.max(q.c2) {
        Some(Family::Diagonal)
    } else {
        None
    }
}

/// Single coordinate value preserving `E log2(rho x + 1)` over the members.
fn merged_coordinate(members: &[(f64, f64)], rho: f64) -> f64 {
    let mass: f64 = members.iter().map(|m| m.1).sum();
    if members.windows(2).all(|w| w[0].0 == w[1].0) {
        return members[0].0;
    }
    if rho == 0.0 {
        return members.iter().map(|(x, p)| x * p).sum::<f64>() / mass;
    }
    let avg = members.iter().map(|(x, p)| p * (rho * x).ln_1p()).sum::<f64>() / mass;
    avg.exp_m1() / rho
}

/// Collapses a law of `(a, 0, c)` and `(0, d, d)` points to at most two
/// points, one per family.
pub fn reduce_to_two_points(dist: &MassPointDistribution, gains: &LinkGains) -> Result<MassPointDistribution> {
    dist.validate()?;
    let mut split = Vec::new();
    let mut diagonal = Vec::new();
    for q in dist.points.iter().filter(|q| q.p > 0.0) {
        match family(q) {
            Some(Family::Split) => split.push(*q),
            Some(Family::Diagonal) => diagonal.push(*q),
            None => {
                return Err(Error::contract(format!(
                    "point ({}, {}, {}) is neither (a, 0, c) nor (0, d, d)",
                    q.a2, q.b2, q.c2
                )))
            }
        }
    }
    let mut points = Vec::with_capacity(2);
    if !split.is_empty() {
        let p: f64 = split.iter().map(|q| q.p).sum();
        let a: Vec<(f64, f64)> = split.iter().map(|q| (q.a2, q.p)).collect();
        let c: Vec<(f64, f64)> = split.iter().map(|q| (q.c2, q.p)).collect();
        points.push(MassPoint::new(merged_coordinate(&a, gains.rd2), 0.0, merged_coordinate(&c, gains.rd1), p));
    }
    if !diagonal.is_empty() {
        let p: f64 = diagonal.iter().map(|q| q.p).sum();
        let d: Vec<(f64, f64)> = diagonal.iter().map(|q| (q.b2, q.p)).collect();
        let d = merged_coordinate(&d, gains.rd1);
        points.push(MassPoint::new(0.0, d, d, p));
    }
    Ok(MassPointDistribution { points })
}
