//! Exact arithmetic in `ℚ(ζ_{2^N})`, and Laurent polynomials and rational
//! functions over it in one formal variable `φ`.
//!
//! Every group in this crate has 2-power order, so one relation
//! `ζ^{2^{N-1}} = -1` is enough: reduction is a sign-flip fold and inverses
//! come from repeated conjugation `ζ ↦ -ζ` down the tower of subfields.

mod laurent;
mod number;
mod rational_fn;

pub use laurent::LaurentPoly;
pub use number::{CyclotomicNumber, RootOfUnity};
pub(crate) use number::fmt_abs_rational;
pub use rational_fn::{laurent_div_exact, laurent_gcd, RationalFn};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("level {level} needs 2^(level-1) coefficients, got {len}")]
    BadCoefficientLength { level: u32, len: usize },
}

/// `ζ_{2^level}^power`.
pub fn root_of_unity(level: u32, power: i64) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(level, power)
}

/// Reduces `num / den` to lowest terms.
pub fn rational_reduce(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFn, CycloError> {
    RationalFn::new(num, den)
}
