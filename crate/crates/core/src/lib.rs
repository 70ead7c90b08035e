//! Capital-flow constrained single-item lot sizing with goodwill-driven
//! demand loss.
//!
//! The crate provides the model ([`model`]), a dense simplex solver
//! ([`lp`]), the production-round sub-problems ([`rounds`]), the forward
//! recursive heuristic ([`frh`]), an exact enumeration oracle ([`oracle`])
//! and seeded instance generators ([`gen`]).

pub mod error;
pub mod frh;
pub mod gen;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod rounds;

pub use error::{Error, Result};
pub use frh::{solve_frh, solve_frh_with, FrhConfig, Solution};
pub use model::{check_feasibility, evaluate_plan, Instance, Plan, Trajectory};
pub use oracle::{solve_exact, OracleConfig};

/// Numerical tolerances shared across modules.
pub mod tol {
    /// Production above this amount counts as a setup.
    pub const ZERO: f64 = 1e-7;
    /// Absolute slack allowed by the feasibility checker.
    pub const FEAS: f64 = 1e-6;
    /// Relative tolerance of the objective identity.
    pub const EVAL: f64 = 1e-9;
    /// Closing gap for the strict goodwill inequality.
    pub const STRICT: f64 = 1e-9;
}
