//! Representation rings of `Pin(2) × A` for a finite abelian 2-group `A`, and
//! of the odd-type quotient `(Pin(2) × ℤ/2^{p+1}) / (ℤ/2)`, together with the
//! index data `s·h − t·1̃` and the fixed-point and `λ₋₁` computations built on it.

mod element;
mod group;
mod index;
mod parse;

pub use element::{Basis, GroupRingPoly, RepElement};
pub use group::{AElement, Character, GroupElement, GroupSpec, Parity, Pin2Part};
pub use index::{power_of_two, Eigenvalue, FixedDims, IndexData};
pub use parse::parse_ring_expr;

use thiserror::Error;

use crate::cyclotomic::{LaurentPoly, RationalFn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid index data: {0}")]
    InvalidIndex(String),
    #[error("element outside the odd-type subring: {0}")]
    ParityViolation(String),
    #[error("operation needs a cyclic action")]
    NonCyclicGroup,
    #[error("virtual fixed dimensions (V: {v}, W: {w})")]
    NegativeMultiplicity { v: i64, w: i64 },
    #[error("lambda_-1 trace has a pole at {0}")]
    PoleAtElement(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn rep_mul(a: &RepElement, b: &RepElement) -> Result<RepElement, RepError> {
    a.try_mul(b)
}

pub fn restrict_to_circle(a: &RepElement) -> LaurentPoly {
    a.restrict_to_circle()
}

pub fn character(a: &RepElement, g: &GroupElement) -> LaurentPoly {
    a.character(g)
}

pub fn fixed_dims(idx: &IndexData, g: &GroupElement) -> FixedDims {
    idx.fixed_dims(g)
}

pub fn lambda_minus_one_trace(idx: &IndexData, g: &GroupElement) -> Result<RationalFn, RepError> {
    idx.lambda_minus_one_trace(g)
}

pub fn quotient_b2plus(idx: &IndexData, j: u32) -> Result<i64, RepError> {
    idx.quotient_b2plus(j)
}
