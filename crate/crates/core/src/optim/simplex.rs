//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Sized for programs with a handful of rows and up to a few thousand
//! columns. Solves `max c'x` subject to linear rows and `x >= 0`.

use crate::error::{Error, Result};

const EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    /// Original variables that ended in the basis.
    pub basic: Vec<usize>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = 1.0 / self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Maximizes `cost' x` over columns flagged in `allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: &[bool]) -> Result<()> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::Solver(format!("no convergence after {MAX_PIVOTS} pivots")));
            }
            let entering = (0..self.width).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j) < -EPS
            });
            let Some(c) = entering else { return Ok(()) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > EPS {
                    let ratio = self.rhs(i) / a;
                    let better = match leave {
                        None => true,
                        Some((k, best)) => {
                            ratio < best - EPS || (ratio <= best + EPS && self.basis[i] < self.basis[k])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Error::Solver(format!("objective unbounded along column {c}"))),
            }
        }
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        self.basis.iter().zip(&self.rows).map(|(&b, row)| cost[b] * row[j]).sum::<f64>() - cost[j]
    }

    fn value(&self, cost: &[f64]) -> f64 {
        self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rhs(i)).sum()
    }
}

impl LinearProgram {
    pub fn solve(&self) -> Result<LpSolution> {
        let n = self.objective.len();
        let m = self.constraints.len();
        if let Some(bad) = self.constraints.iter().position(|c| c.coeffs.len() != n) {
            return Err(Error::Solver(format!("row {bad} has the wrong number of coefficients")));
        }
        if self.objective.iter().chain(self.constraints.iter().flat_map(|c| c.coeffs.iter().chain([&c.rhs]))).any(|v| !v.is_finite()) {
            return Err(Error::Solver("non-finite coefficient".into()));
        }

        // Normalize to nonnegative right-hand sides.
        let rows: Vec<(Vec<f64>, Relation, f64)> = self
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < 0.0 {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v).collect(), rel, -c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs)
                }
            })
            .collect();

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = n + n_slack + n_art;
        let mut tab = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), width, pivots: 0 };
        let (mut s, mut a) = (n, n + n_slack);
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![0.0; width + 1];
            row[..n].copy_from_slice(&coeffs);
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[s] = 1.0;
                    tab.basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -1.0;
                    row[a] = 1.0;
                    tab.basis.push(a);
                    s += 1;
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = 1.0;
                    tab.basis.push(a);
                    a += 1;
                }
            }
            tab.rows.push(row);
        }

        let is_art = |j: usize| j >= n + n_slack;
        if n_art > 0 {
            let cost: Vec<f64> = (0..width).map(|j| if is_art(j) { -1.0 } else { 0.0 }).collect();
            tab.optimize(&cost, &vec![true; width])?;
            let infeasibility = -tab.value(&cost);
            if infeasibility > 1e-8 {
                return Err(Error::Solver(format!("infeasible program (phase one residual {infeasibility:e})")));
            }
            // Drive remaining artificials out of the basis, dropping redundant rows.
            let mut i = 0;
            while i < tab.rows.len() {
                if is_art(tab.basis[i]) {
                    match (0..n + n_slack).find(|&j| tab.rows[i][j].abs() > EPS) {
                        Some(j) => tab.pivot(i, j),
                        None => {
                            tab.rows.remove(i);
                            tab.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        let mut cost = vec![0.0; width];
        cost[..n].copy_from_slice(&self.objective);
        let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
        tab.optimize(&cost, &allowed)?;

        let mut x = vec![0.0; n];
        let mut basic = Vec::new();
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.rhs(i).max(0.0);
                basic.push(b);
            }
        }
        basic.sort_unstable();
        let value = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution { x, value, basic, pivots: tab.pivots })
    }
}
