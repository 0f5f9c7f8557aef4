//! Independent numerics: adaptive quadrature and a shooting eigensolver for
//! the exact hyperradial equation (no approximation of the `1/r^2` barrier).

mod quadrature;
mod shooting;

pub use quadrature::{adaptive_quad, adaptive_quad_points, radial_breakpoints, MAX_INTERVALS};
pub use shooting::{
    approximation_error, count_bound_states, hulthen_problem, solve_exact, OracleResult, RadialProblem,
    ShootingConfig, DEFAULT_MAX_ITER, DEFAULT_STEPS, DEFAULT_TOLERANCE,
};
