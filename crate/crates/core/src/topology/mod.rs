//! Intersection forms, branched-cover invariants, genus bounds, and the
//! classification of spin involutions on rational cohomology K3 surfaces.

mod cover;
mod form;
mod genus;
mod involution;

pub use cover::{cover_invariants, cover_k, cover_m, index_from_cover, spin_condition, CoverConstraints, CoverInvariants};
pub use form::{class_square, is_characteristic_mod2, Block, IntersectionForm, ManifoldSpec, SurfaceClass};
pub use genus::{excluded_genera, genus_bound, genus_hypotheses, GenusBoundReport};
pub use involution::{
    classify_qk3_involution, involution_quotient_arith, k3_cover_construction_check, spin_type_from_fixed_set,
    FixedSetDescription, K3CoverCheck, Qk3Classification, QuotientArith, SpinType, SplittingOutcome, Verdict,
};

use thiserror::Error;

use crate::degree::DegreeError;
use crate::repring::RepError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("class has {got} coordinates, form has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid intersection form: {0}")]
    InvalidForm(String),
    #[error("b1 = {0}, only b1 = 0 is supported")]
    NonzeroB1(u32),
    #[error("spin condition failed: {0}")]
    SpinConditionFailed(String),
    #[error("{name} = {value} is not a nonnegative integer")]
    NonIntegralInvariant { name: String, value: String },
    #[error("hypothesis `{name}` fails ({detail})")]
    HypothesisFailed { name: String, detail: String },
    #[error("parity error: {0}")]
    ParityError(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Serde adapter writing a rational as `"a"` or `"a/b"`.
pub mod ratstr {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("not a rational: {s}")))
    }
}
