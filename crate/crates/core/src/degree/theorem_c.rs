use serde::{Deserialize, Serialize};

use crate::repring::{GroupElement, IndexData, Pin2Part};

use super::DegreeError;

/// Outcome of evaluating `tr_{φν} λ₋₁(W − V)` for a cyclic action whose
/// quotient has `b₂⁺ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContradictionReport {
    pub element: String,
    pub trace: String,
    pub is_polynomial: bool,
    /// Reduced denominator; a non-monomial here is the pole that no Laurent
    /// polynomial `tr_{φν}(α)` can match.
    pub offending_denominator: String,
    pub certified: bool,
}

pub fn verify_theorem_c(idx: &IndexData) -> Result<ContradictionReport, DegreeError> {
    let group = idx.group();
    if idx.k() <= 0 {
        return Err(DegreeError::HypothesisNotMet(format!("k = {} must be positive", idx.k())));
    }
    if idx.m() <= 0 {
        return Err(DegreeError::HypothesisNotMet(format!("m = {} must be positive", idx.m())));
    }
    if idx.t_trivial() != 0 {
        return Err(DegreeError::HypothesisNotMet(format!(
            "b₂⁺(X/A) = {} is already nonzero",
            idx.t_trivial()
        )));
    }
    if group.cyclic_exponent().is_none() {
        return Err(DegreeError::HypothesisNotMet(format!("{group} is not cyclic")));
    }
    let nu = group
        .generator()
        .ok_or_else(|| DegreeError::HypothesisNotMet("action is trivial".into()))?;
    let g = GroupElement::new(Pin2Part::GenericTorus, nu);
    let value = idx.lambda_minus_one_trace(&g)?;
    let is_polynomial = value.is_polynomial();
    Ok(ContradictionReport {
        element: g.label(group),
        trace: value.to_string(),
        is_polynomial,
        offending_denominator: value.denominator().to_string(),
        certified: !is_polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn even_p1_pole() {
        let idx = IndexData::cyclic_even(1, &[1, 1], &[3, 0]).unwrap();
        let r = verify_theorem_c(&idx).unwrap();
        assert!(r.certified);
        // Float oracle: blow-up approaching φ = −1 where (1 + φ) vanishes.
        let v = idx.lambda_minus_one_trace(&GroupElement::new(Pin2Part::GenericTorus, idx.group().generator().unwrap())).unwrap();
        let near = |eps: f64| v.eval_complex(Complex64::new(-1.0 + eps, 0.0)).norm();
        assert!(near(1e-4) > 100.0 * near(1e-2));
    }

    #[test]
    fn hypotheses() {
        let with_trivial = IndexData::cyclic_even(1, &[1, 1], &[2, 1]).unwrap();
        assert!(matches!(verify_theorem_c(&with_trivial), Err(DegreeError::HypothesisNotMet(_))));
        let k0 = IndexData::cyclic_even(1, &[0, 0], &[3, 0]).unwrap();
        assert!(matches!(verify_theorem_c(&k0), Err(DegreeError::HypothesisNotMet(_))));
    }
}
