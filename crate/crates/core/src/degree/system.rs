use std::fmt;

use crate::cyclotomic::RationalFn;
use crate::repring::{FixedDims, GroupElement, IndexData, Pin2Part};

use super::DegreeError;

pub const DEFAULT_H_CUTOFF: u32 = 8;

/// What the character formula says about `tr_g(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationKind {
    /// Fixed dimensions differ, so `d(f^g) = 0` and `tr_g(α) = 0`.
    ZeroTrace,
    /// Both fixed subspaces are zero, so `d(f^g) = 1` and
    /// `tr_g(α) = tr_g λ₋₁(W − V)`.
    LambdaTrace { value: RationalFn },
    /// Fixed dimensions are equal and positive; the degree of the restricted
    /// map is unknown and no equation is recorded.
    Skipped { reason: String },
}

impl EquationKind {
    pub fn name(&self) -> &'static str {
        match self {
            EquationKind::ZeroTrace => "zero",
            EquationKind::LambdaTrace { .. } => "lambda",
            EquationKind::Skipped { .. } => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEquation {
    pub element: GroupElement,
    pub dims: FixedDims,
    pub kind: EquationKind,
}

impl TraceEquation {
    /// Right-hand side `tr_g(α) = value`, unless skipped.
    pub fn rhs(&self) -> Option<RationalFn> {
        match &self.kind {
            EquationKind::ZeroTrace => Some(RationalFn::from_poly(Default::default())),
            EquationKind::LambdaTrace { value } => Some(value.clone()),
            EquationKind::Skipped { .. } => None,
        }
    }
}

/// One trace equation per element `φ·a` and `J·a`, `a` ranging over the
/// enumerated finite part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSystem {
    pub index: IndexData,
    pub equations: Vec<TraceEquation>,
    pub h_cutoff: u32,
}

impl TraceSystem {
    pub fn equation(&self, g: &GroupElement) -> Option<&TraceEquation> {
        self.equations.iter().find(|e| &e.element == g)
    }

    /// Copy of the system with the `i`-th equation dropped.
    pub fn without(&self, i: usize) -> TraceSystem {
        let mut s = self.clone();
        s.equations.remove(i);
        s
    }

    pub fn label(&self, g: &GroupElement) -> String {
        g.label(self.index.group())
    }
}

impl fmt::Display for TraceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            write!(f, "{:<10} dimV={:<3} dimW={:<3} ", self.label(&eq.element), eq.dims.v, eq.dims.w)?;
            match &eq.kind {
                EquationKind::ZeroTrace => writeln!(f, "tr = 0")?,
                EquationKind::LambdaTrace { value } => writeln!(f, "tr = {value}")?,
                EquationKind::Skipped { reason } => writeln!(f, "skipped ({reason})")?,
            }
        }
        Ok(())
    }
}

pub fn classify(idx: &IndexData, g: &GroupElement) -> Result<TraceEquation, DegreeError> {
    let dims = idx.fixed_dims(g);
    let kind = if dims.difference() != 0 {
        EquationKind::ZeroTrace
    } else if dims.v == 0 && dims.w == 0 {
        let value = idx.lambda_minus_one_trace(g).unwrap_or_else(|e| {
            panic!("both fixed subspaces vanish at {}, yet λ₋₁ trace failed: {e}", g.label(idx.group()))
        });
        EquationKind::LambdaTrace { value }
    } else {
        EquationKind::Skipped {
            reason: format!("dim V_g = dim W_g = {} > 0; degree of f^g unknown", dims.v),
        }
    };
    Ok(TraceEquation { element: g.clone(), dims, kind })
}

pub fn build_trace_system(idx: &IndexData, h_cutoff: u32) -> Result<TraceSystem, DegreeError> {
    if h_cutoff == 0 {
        return Err(DegreeError::InvalidCutoff);
    }
    let group = idx.group();
    let elements = group.elements();
    let mut equations = Vec::with_capacity(2 * elements.len());
    for pin2 in [Pin2Part::GenericTorus, Pin2Part::J] {
        for a in &elements {
            equations.push(classify(idx, &GroupElement::new(pin2, a.clone()))?);
        }
    }
    Ok(TraceSystem { index: idx.clone(), equations, h_cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::{power_of_two, GroupSpec};

    fn kinds(sys: &TraceSystem) -> Vec<(String, &'static str)> {
        sys.equations.iter().map(|e| (sys.label(&e.element), e.kind.name())).collect()
    }

    #[test]
    fn furuta_system() {
        let idx = IndexData::furuta(1, 3).unwrap();
        let sys = build_trace_system(&idx, DEFAULT_H_CUTOFF).unwrap();
        assert_eq!(kinds(&sys), vec![("φ".into(), "zero"), ("J".into(), "lambda")]);
        let rhs = sys.equations[1].rhs().unwrap();
        assert_eq!(rhs.as_polynomial().unwrap().as_constant().unwrap(), power_of_two(1));
    }

    #[test]
    fn theorem_b_system() {
        let idx = IndexData::cyclic_even(1, &[1, 1], &[2, 1]).unwrap();
        let sys = build_trace_system(&idx, 4).unwrap();
        assert_eq!(
            kinds(&sys),
            vec![
                ("φ".into(), "zero"),
                ("φ·(1)".into(), "zero"),
                ("J".into(), "lambda"),
                ("J·(1)".into(), "zero"),
            ]
        );
    }

    #[test]
    fn theorem_b_with_t1_zero_makes_j_nu_a_lambda_equation() {
        // Eigenvalue oracle: J·ν acts on ζ·1̃ by (−1)(−1) = 1, on 1̃ by −1, and on
        // ζ^a·h by ±i·(−1)^a. With t₁ = 0 nothing is fixed on either side.
        let idx = IndexData::cyclic_even(1, &[1, 1], &[0, 3]).unwrap();
        let g = idx.group().clone();
        let j_nu = GroupElement::new(Pin2Part::J, g.generator().unwrap());
        let eq = classify(&idx, &j_nu).unwrap();
        assert_eq!((eq.dims.v, eq.dims.w), (0, 0));
        let EquationKind::LambdaTrace { value } = eq.kind else { panic!("expected lambda") };
        // (1 − (−1))^3 / ((1 − i)(1 + i))^2 = 8/4
        assert_eq!(value.as_polynomial().unwrap().as_constant().unwrap(), power_of_two(1));
    }

    #[test]
    fn odd_type_skips_when_odd_t_sum_is_2k() {
        let idx = IndexData::odd(1, &[1, 1], &[2, 1]).unwrap();
        let sys = build_trace_system(&idx, 4).unwrap();
        let j_nu = GroupElement::new(Pin2Part::J, GroupSpec::odd(1).unwrap().generator().unwrap());
        let eq = sys.equation(&j_nu).unwrap();
        assert_eq!((eq.dims.v, eq.dims.w), (2, 2));
        assert!(matches!(eq.kind, EquationKind::Skipped { .. }));
    }

    #[test]
    fn zero_cutoff_rejected() {
        let idx = IndexData::furuta(1, 3).unwrap();
        assert!(matches!(build_trace_system(&idx, 0), Err(DegreeError::InvalidCutoff)));
    }
}
