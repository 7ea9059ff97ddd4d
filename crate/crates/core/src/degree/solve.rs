use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::{CyclotomicNumber, LaurentPoly, RationalFn};
use crate::repring::{AElement, Basis, Character, GroupElement, GroupSpec, Parity, Pin2Part, RepElement};

use super::system::{EquationKind, TraceSystem};

/// Why no degree `α` can satisfy the system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `tr_g(α)` is a Laurent polynomial but the right-hand side is not.
    NonPolynomialTrace { element: String, value: RationalFn },
    /// The torus trace has a term `φ^e` with `|e|` above the `h_i` cutoff.
    BeyondCutoff { element: String, exponent: i64, cutoff: u32 },
    /// The torus trace is not invariant under `φ ↦ φ^{-1}`.
    Asymmetric { element: String, exponent: i64 },
    /// The trace at a `J` element depends on `φ`.
    NonConstant { element: String, value: RationalFn },
    /// Interpolating the traces gives an irrational coefficient.
    NonRational { term: String, value: CyclotomicNumber },
    /// Two equations demand different values for the same combination.
    Conflict { first: String, second: String },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::NonPolynomialTrace { element, value } => {
                write!(f, "tr_{element}(α) must be a Laurent polynomial, but equals {value}")
            }
            Certificate::BeyondCutoff { element, exponent, cutoff } => {
                write!(f, "tr_{element}(α) has a φ^{exponent} term beyond h_{cutoff}")
            }
            Certificate::Asymmetric { element, exponent } => {
                write!(f, "tr_{element}(α) is not symmetric in φ: coefficients of φ^{exponent} and φ^{} differ", -exponent)
            }
            Certificate::NonConstant { element, value } => {
                write!(f, "tr_{element}(α) must be constant, but equals {value}")
            }
            Certificate::NonRational { term, value } => {
                write!(f, "coefficient of {term} would be {value}, which is not rational")
            }
            Certificate::Conflict { first, second } => {
                write!(f, "equations at {first} and {second} are incompatible")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeSolution {
    Unique { alpha: RepElement },
    Underdetermined { skipped: Vec<String>, free: Vec<String> },
    Inconsistent { certificate: Certificate },
}

impl DegreeSolution {
    pub fn alpha(&self) -> Option<&RepElement> {
        match self {
            DegreeSolution::Unique { alpha } => Some(alpha),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            DegreeSolution::Unique { .. } => "unique",
            DegreeSolution::Underdetermined { .. } => "underdetermined",
            DegreeSolution::Inconsistent { .. } => "inconsistent",
        }
    }
}

/// Coordinates of `α` that one family of traces determines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    /// `α₀ + α̃₀`, read off the `φ^0` coefficient at `φ·a`.
    Sum,
    /// `α₀ − α̃₀`, the trace at `J·a`.
    Diff,
    /// `α_i`, the `φ^i` coefficient at `φ·a`.
    H(u32),
}

impl Slot {
    fn parity(self) -> Parity {
        match self {
            Slot::Sum | Slot::Diff => Parity::Even,
            Slot::H(i) => Basis::H(i).parity(),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Slot::Sum => "α₀ + α̃₀",
            Slot::Diff => "α₀ − α̃₀",
            Slot::H(_) => "α_i",
        }
    }
}

fn inconsistent(certificate: Certificate) -> DegreeSolution {
    DegreeSolution::Inconsistent { certificate }
}

/// Checks the right-hand side of a torus equation and returns it as a
/// polynomial.
pub(crate) fn torus_rhs(
    label: &str,
    rhs: &RationalFn,
    cutoff: u32,
) -> Result<LaurentPoly, Certificate> {
    let Some(poly) = rhs.as_polynomial() else {
        return Err(Certificate::NonPolynomialTrace { element: label.into(), value: rhs.clone() });
    };
    for (e, c) in poly.terms() {
        if e.unsigned_abs() > cutoff as u64 {
            return Err(Certificate::BeyondCutoff { element: label.into(), exponent: e, cutoff });
        }
        if e > 0 && &poly.coeff_at(-e) != c {
            return Err(Certificate::Asymmetric { element: label.into(), exponent: e });
        }
        if e < 0 && poly.coeff_at(-e).is_zero() {
            return Err(Certificate::Asymmetric { element: label.into(), exponent: -e });
        }
    }
    Ok(poly.clone())
}

pub(crate) fn j_rhs(label: &str, rhs: &RationalFn) -> Result<CyclotomicNumber, Certificate> {
    rhs.as_polynomial()
        .and_then(LaurentPoly::as_constant)
        .ok_or_else(|| Certificate::NonConstant { element: label.into(), value: rhs.clone() })
}

/// Recovers `α` from its traces by character orthogonality.
///
/// Each slot `σ` is a group-ring polynomial `Σ_χ c_χ χ` with `χ` running over
/// one parity class. Its values `σ(a)` on the enumerated elements determine it
/// via `c_χ = |E|^{-1} Σ_a σ(a) χ(a)^{-1}`.
pub fn solve_degree(sys: &TraceSystem) -> DegreeSolution {
    let group = sys.index.group();
    let elements = group.elements();
    let pos: BTreeMap<&AElement, usize> = elements.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut slots: BTreeMap<Slot, Vec<Option<CyclotomicNumber>>> = BTreeMap::new();
    let mut all_slots = vec![Slot::Sum, Slot::Diff];
    all_slots.extend((1..=sys.h_cutoff).map(Slot::H));
    for s in &all_slots {
        slots.insert(*s, vec![None; elements.len()]);
    }
    let mut skipped = Vec::new();

    for eq in &sys.equations {
        let label = sys.label(&eq.element);
        let Some(&at) = pos.get(&eq.element.finite) else { continue };
        let Some(rhs) = eq.rhs() else {
            skipped.push(label);
            continue;
        };
        match eq.element.pin2 {
            Pin2Part::GenericTorus => {
                let poly = match torus_rhs(&label, &rhs, sys.h_cutoff) {
                    Ok(p) => p,
                    Err(c) => return inconsistent(c),
                };
                slots.get_mut(&Slot::Sum).unwrap()[at] = Some(poly.coeff_at(0));
                for i in 1..=sys.h_cutoff {
                    slots.get_mut(&Slot::H(i)).unwrap()[at] = Some(poly.coeff_at(i as i64));
                }
            }
            Pin2Part::J => match j_rhs(&label, &rhs) {
                Ok(c) => slots.get_mut(&Slot::Diff).unwrap()[at] = Some(c),
                Err(c) => return inconsistent(c),
            },
            Pin2Part::TorusIdentity => {}
        }
    }

    let mut free = Vec::new();
    for (slot, values) in &slots {
        for (a, v) in elements.iter().zip(values) {
            if v.is_some() || matches!(slot, Slot::H(_)) {
                continue;
            }
            let pin2 = if *slot == Slot::Diff { Pin2Part::J } else { Pin2Part::GenericTorus };
            let el = GroupElement::new(pin2, a.clone());
            free.push(format!("{} at {}", slot.label(), sys.label(&el)));
        }
    }
    if !free.is_empty() {
        return DegreeSolution::Underdetermined { skipped, free };
    }

    let n = BigRational::from_integer((elements.len() as i64).into());
    let mut coeffs: BTreeMap<Slot, BTreeMap<Character, BigRational>> = BTreeMap::new();
    for (slot, values) in &slots {
        let mut poly = BTreeMap::new();
        for chi in group.characters_of_parity(slot.parity()) {
            let mut acc = CyclotomicNumber::zero();
            for (a, v) in elements.iter().zip(values) {
                let w = group.char_value(&chi, a).inv().to_number();
                acc = &acc + &(v.as_ref().unwrap() * &w);
            }
            let c = acc.scale(&(BigRational::one() / &n));
            let Some(q) = c.as_rational() else {
                let term = match slot {
                    Slot::H(i) => format!("{chi}·h{i}"),
                    s => format!("{chi} in {}", s.label()),
                };
                return inconsistent(Certificate::NonRational { term, value: c });
            };
            if !q.is_zero() {
                poly.insert(chi, q.clone());
            }
        }
        coeffs.insert(*slot, poly);
    }
    // Slots that must vanish identically on the other parity class are never
    // populated, so the assembled element automatically respects parity.

    let alpha = assemble(group, &coeffs);
    debug_assert!(residual(sys, &alpha).is_none(), "interpolated α fails re-substitution");
    DegreeSolution::Unique { alpha }
}

fn assemble(group: &GroupSpec, coeffs: &BTreeMap<Slot, BTreeMap<Character, BigRational>>) -> RepElement {
    let half = BigRational::new(1.into(), 2.into());
    let empty = BTreeMap::new();
    let sum = coeffs.get(&Slot::Sum).unwrap_or(&empty);
    let diff = coeffs.get(&Slot::Diff).unwrap_or(&empty);
    let mut c0 = BTreeMap::new();
    let mut c0t = BTreeMap::new();
    for chi in sum.keys().chain(diff.keys()) {
        let s = sum.get(chi).cloned().unwrap_or_else(BigRational::zero);
        let d = diff.get(chi).cloned().unwrap_or_else(BigRational::zero);
        c0.insert(chi.clone(), (&s + &d) * &half);
        c0t.insert(chi.clone(), (&s - &d) * &half);
    }
    let mut hs = BTreeMap::new();
    for (slot, poly) in coeffs {
        if let Slot::H(i) = slot {
            hs.insert(*i, poly.clone());
        }
    }
    RepElement::from_parts(group, &c0, &c0t, &hs)
}

/// First equation of `sys` that `alpha` violates, if any.
pub fn residual(sys: &TraceSystem, alpha: &RepElement) -> Option<String> {
    for eq in &sys.equations {
        let Some(rhs) = eq.rhs() else { continue };
        let lhs = alpha.character(&eq.element);
        let ok = match eq.kind {
            EquationKind::Skipped { .. } => true,
            _ => rhs.as_polynomial() == Some(&lhs),
        };
        if !ok {
            return Some(sys.label(&eq.element));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::system::build_trace_system;
    use crate::repring::{parse_ring_expr, IndexData};

    fn alpha(idx: &IndexData) -> RepElement {
        let sys = build_trace_system(idx, 6).unwrap();
        match solve_degree(&sys) {
            DegreeSolution::Unique { alpha } => alpha,
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn furuta_alpha() {
        let idx = IndexData::furuta(1, 3).unwrap();
        let expect = parse_ring_expr("1 - t1", idx.group()).unwrap();
        assert_eq!(alpha(&idx), expect);
        let idx = IndexData::furuta(2, 4).unwrap();
        let expect = parse_ring_expr("1 - t1", idx.group()).unwrap().scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(alpha(&idx), expect);
    }

    #[test]
    fn cyclic_even_alpha() {
        // k = 1, m = 3: α = 2^{3-2-2}(1 + ζ)(1 − 1̃)
        let idx = IndexData::cyclic_even(1, &[1, 1], &[2, 1]).unwrap();
        let expect = parse_ring_expr("(1 + z1)*(1 - t1)", idx.group()).unwrap()
            .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(alpha(&idx), expect);
    }

    #[test]
    fn odd_alpha() {
        // k = 1, m = 3, p = 1: α = 2^{3-2-1-1}(1 + ξ²)(1 − 1̃)
        let idx = IndexData::odd(1, &[1, 1], &[1, 2]).unwrap();
        let expect = parse_ring_expr("(1 + z1^2)*(1 - t1)", idx.group()).unwrap()
            .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(alpha(&idx), expect);
    }

    #[test]
    fn skipped_equation_leaves_slot_free() {
        let idx = IndexData::odd(1, &[1, 1], &[2, 1]).unwrap();
        let sys = build_trace_system(&idx, 4).unwrap();
        let DegreeSolution::Underdetermined { skipped, free } = solve_degree(&sys) else { panic!() };
        assert_eq!(skipped, vec!["J·ν^1".to_string()]);
        assert_eq!(free, vec!["α₀ − α̃₀ at J·ν^1".to_string()]);
    }

    #[test]
    fn cyclic_generator_torus_trace_is_not_polynomial() {
        // t_trivial = 0 with k > 0: nothing is fixed at φ·ν.
        let idx = IndexData::cyclic_even(1, &[1, 1], &[3, 0]).unwrap();
        let sys = build_trace_system(&idx, 4).unwrap();
        match solve_degree(&sys) {
            DegreeSolution::Inconsistent { certificate: Certificate::NonPolynomialTrace { element, .. } } => {
                assert_eq!(element, "φ·(1)")
            }
            other => panic!("{other:?}"),
        }
    }
}
