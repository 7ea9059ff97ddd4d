use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::repring::{Basis, GroupElement, GroupSpec, IndexData, Parity, Pin2Part, RepElement};

use super::solve::DegreeSolution;
use super::system::{classify, EquationKind};
use super::DegreeError;

/// A named hypothesis and whether the index data satisfies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Condition {
    fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Condition { name: name.into(), holds, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    /// `b` in `m ≥ 2k + b`: minus the 2-adic valuation of `α₀(1) / 2^{m−2k}`.
    pub binding: i64,
    /// 2-adic valuation of the trivial-character coefficient of `α`; integrality
    /// requires it to be non-negative.
    pub coefficient_valuation: i64,
    pub trivial_coefficient: String,
    pub conclusion: String,
    /// The conclusion with `m` and `k` substituted.
    pub instantiated: String,
    pub holds_for_input: bool,
    pub alpha_integral: bool,
    pub nondegeneracy: Vec<Condition>,
}

fn v2_int(n: &BigInt) -> i64 {
    n.trailing_zeros().map(|z| z as i64).unwrap_or(0)
}

/// 2-adic valuation of a nonzero rational.
pub fn v2(q: &BigRational) -> i64 {
    assert!(!q.is_zero(), "valuation of zero");
    v2_int(q.numer()) - v2_int(q.denom())
}

/// Textual form of `m ≥ 2k + binding`, using the parameter name the group
/// shape suggests when the binding matches it.
fn symbolic(group: &GroupSpec, binding: i64) -> String {
    let generic = format!("m ≥ 2k+{binding}");
    let log = group.log2_action_order() as i64;
    if binding != 1 + log {
        return generic;
    }
    match group {
        GroupSpec::Odd { .. } => "m ≥ 2k+1+p".into(),
        GroupSpec::Even { orders } if orders.iter().all(|&o| o == 2) => match orders.len() {
            0 => "m ≥ 2k+1".into(),
            1 => "m ≥ 2k+2".into(),
            _ => "m ≥ 2k+1+q".into(),
        },
        _ => generic,
    }
}

pub fn conclude_bound(sol: &DegreeSolution, idx: &IndexData) -> Result<InequalityReport, DegreeError> {
    let alpha = sol.alpha().ok_or(DegreeError::NotUnique)?;
    let group = idx.group();
    let c = alpha.coefficient(Basis::One, &group.trivial_character());
    if c.is_zero() {
        return Err(DegreeError::HypothesisNotMet(
            "α has no trivial-character component, so integrality gives no bound".into(),
        ));
    }
    let excess = idx.m() - 2 * idx.k();
    let coefficient_valuation = v2(&c);
    let binding = excess - coefficient_valuation;
    let required = 2 * idx.k() + binding;
    Ok(InequalityReport {
        binding,
        coefficient_valuation,
        trivial_coefficient: c.to_string(),
        conclusion: symbolic(group, binding),
        instantiated: format!("{} ≥ {}", idx.m(), required),
        holds_for_input: idx.m() >= required,
        alpha_integral: alpha.is_integral(),
        nondegeneracy: check_nondegeneracy(idx),
    })
}

/// Conditions for a cyclic odd-type action, from `b₂⁺(X_j)` for
/// `j = 0..=p` (`b₂⁺(X_0) = m`).
pub fn odd_conditions(k: i64, quotient_b2plus: &[i64]) -> Vec<Condition> {
    let p = quotient_b2plus.len() - 1;
    let b = quotient_b2plus;
    let mut out = vec![Condition::new("b₂⁺(X/τ) > 0", b[p] > 0, format!("b₂⁺(X_{p}) = {}", b[p]))];
    for a in 1..p {
        out.push(Condition::new(
            format!("b₂⁺(X_{a}) ≠ b₂⁺(X_{})", a + 1),
            b[a] != b[a + 1],
            format!("{} vs {}", b[a], b[a + 1]),
        ));
    }
    if p >= 1 {
        out.push(Condition::new(
            "m ≠ 2k + b₂⁺(X_1)",
            b[0] != 2 * k + b[1],
            format!("m = {}, 2k + b₂⁺(X_1) = {}", b[0], 2 * k + b[1]),
        ));
    }
    out
}

pub fn check_nondegeneracy(idx: &IndexData) -> Vec<Condition> {
    let group = idx.group();
    if let GroupSpec::Odd { p } = group {
        let b: Vec<i64> = (0..=*p).map(|j| idx.quotient_b2plus(j).expect("cyclic")).collect();
        return odd_conditions(idx.k(), &b);
    }
    let full = idx.t_trivial();
    let mut out = vec![Condition::new("b₂⁺(X/A) ≠ 0", full != 0, format!("b₂⁺(X/A) = {full}"))];
    let elementary = group.factor_orders().iter().all(|&o| o == 2);
    for a in group.elements().into_iter().filter(|a| *a != group.identity()) {
        let label = group.fmt_element(&a);
        if elementary {
            let q = idx.invariant_dim(std::slice::from_ref(&a));
            out.push(Condition::new(
                format!("m ≠ b₂⁺(X/{label})"),
                idx.m() != q,
                format!("m = {}, b₂⁺(X/{label}) = {q}", idx.m()),
            ));
        } else {
            let eq = classify(idx, &GroupElement::new(Pin2Part::J, a)).expect("classification");
            out.push(Condition::new(
                format!("dim W_J{label} ≠ dim V_J{label}"),
                !matches!(eq.kind, EquationKind::Skipped { .. } | EquationKind::LambdaTrace { .. }),
                format!("V: {}, W: {}", eq.dims.v, eq.dims.w),
            ));
        }
    }
    out
}

/// Whether every condition in the list holds.
pub fn all_hold(conds: &[Condition]) -> bool {
    conds.iter().all(|c| c.holds)
}

/// `2^{m−2k−1−log₂|A|} · ρ · (1 − 1̃)`, where `ρ` is the sum of the characters
/// allowed alongside `1`. This is the degree whenever every non-degeneracy
/// condition holds.
pub fn closed_form_alpha(idx: &IndexData) -> RepElement {
    let group = idx.group();
    let e = idx.m() - 2 * idx.k() - 1 - group.log2_action_order() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let c = two.pow(e as i32);
    let mut alpha = RepElement::zero(group);
    for chi in group.characters_of_parity(Parity::Even) {
        alpha.add_term(Basis::One, chi.clone(), c.clone());
        alpha.add_term(Basis::Tilde, chi, -c.clone());
    }
    alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{build_trace_system, solve_degree};

    fn report(idx: &IndexData) -> InequalityReport {
        let sys = build_trace_system(idx, 4).unwrap();
        conclude_bound(&solve_degree(&sys), idx).unwrap()
    }

    #[test]
    fn conclusions() {
        let r = report(&IndexData::furuta(1, 3).unwrap());
        assert_eq!((r.conclusion.as_str(), r.binding, r.holds_for_input), ("m ≥ 2k+1", 1, true));
        let r = report(&IndexData::cyclic_even(1, &[1, 1], &[2, 1]).unwrap());
        assert_eq!((r.conclusion.as_str(), r.instantiated.as_str()), ("m ≥ 2k+2", "3 ≥ 4"));
        assert!(!r.holds_for_input && !r.alpha_integral);
        let r = report(&IndexData::odd(2, &[1, 1, 1, 1], &[0, 1, 1, 5]).unwrap());
        assert_eq!((r.conclusion.as_str(), r.binding), ("m ≥ 2k+1+p", 3));
        assert!(all_hold(&r.nondegeneracy));
    }

    #[test]
    fn degenerate_b_collapses_to_furuta_strength() {
        let r = report(&IndexData::cyclic_even(1, &[1, 1], &[0, 3]).unwrap());
        assert_eq!(r.conclusion, "m ≥ 2k+1");
        assert!(!all_hold(&r.nondegeneracy));
    }

    #[test]
    fn not_unique_is_an_error() {
        let idx = IndexData::odd(1, &[1, 1], &[2, 1]).unwrap();
        let sys = build_trace_system(&idx, 4).unwrap();
        assert!(matches!(conclude_bound(&solve_degree(&sys), &idx), Err(DegreeError::NotUnique)));
    }

    #[test]
    fn odd_chain() {
        // Direct evaluation of the displayed sums: t₄, t₂ + t₆ + …, t₁ + t₃.
        let holds = |t: &[i64]| {
            let idx = IndexData::odd(2, &[1, 1, 0, 0], t).unwrap();
            check_nondegeneracy(&idx).iter().map(|c| c.holds).collect::<Vec<_>>()
        };
        assert_eq!(holds(&[1, 2, 0, 3]), vec![true, true, true]);
        assert_eq!(holds(&[1, 0, 2, 3]), vec![true, false, true]);
        assert_eq!(holds(&[1, 2, 0, 0]), vec![false, true, true]);
        assert_eq!(holds(&[1, 2, 1, 3]), vec![true, true, false]);
    }

    #[test]
    fn odd_p1_names() {
        let idx = IndexData::odd(1, &[1, 1], &[1, 2]).unwrap();
        let names: Vec<_> = check_nondegeneracy(&idx).into_iter().map(|c| c.name).collect();
        assert_eq!(names, vec!["b₂⁺(X/τ) > 0", "m ≠ 2k + b₂⁺(X_1)"]);
    }

    #[test]
    fn elementary_conditions() {
        let g = GroupSpec::elementary(2);
        let chars = g.characters();
        let mut t = std::collections::BTreeMap::new();
        for (i, c) in chars.iter().enumerate() {
            t.insert(c.clone(), [2, 1, 1, 0][i]);
        }
        let s = [(g.trivial_character(), 2)].into_iter().collect();
        let idx = IndexData::new(g, s, t).unwrap();
        let c = check_nondegeneracy(&idx);
        assert_eq!(c.len(), 4);
        assert!(all_hold(&c), "{c:?}");
    }

    #[test]
    fn valuation() {
        assert_eq!(v2(&BigRational::new(12.into(), 5.into())), 2);
        assert_eq!(v2(&BigRational::new((-3).into(), 8.into())), -3);
    }
}
