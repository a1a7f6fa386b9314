//! Upper-bound optimization: the bilinear program, the discretized LP over
//! relay power laws, its support reductions, and the gradient-bound check.

pub mod bilinear;
pub mod gradient;
pub mod lp;
pub mod simplex;

pub use bilinear::{
    lipschitz_cell_bound, objective_p1, solve_p1_closed, solve_p1_closed_with_case, solve_p1_grid, ActiveTerm,
    Objective, OptSolution,
};
pub use gradient::{grad_f2_bound_check, GradientReport};
pub use lp::{case_split, reduce_to_two_points, solve_p4_lp, P4Solution};
