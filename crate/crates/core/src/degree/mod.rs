//! Trace equations for the equivariant degree `α` of a finite-dimensional
//! approximation `f: V → W`, their exact solution, and the inequalities that
//! integrality of `α` forces.

mod bound;
mod dense;
mod solve;
mod system;
mod theorem_c;

pub use bound::{all_hold, check_nondegeneracy, closed_form_alpha, conclude_bound, odd_conditions, v2, Condition, InequalityReport};
pub use dense::solve_degree_dense;
pub use solve::{residual, solve_degree, Certificate, DegreeSolution};
pub use system::{build_trace_system, classify, EquationKind, TraceEquation, TraceSystem, DEFAULT_H_CUTOFF};
pub use theorem_c::{verify_theorem_c, ContradictionReport};

use thiserror::Error;

use crate::repring::RepError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("h cutoff must be at least 1")]
    InvalidCutoff,
    #[error("the degree is not uniquely determined")]
    NotUnique,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}
