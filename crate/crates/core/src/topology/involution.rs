use serde::{Deserialize, Serialize};

use crate::degree::{
    build_trace_system, check_nondegeneracy, conclude_bound, solve_degree, verify_theorem_c,
    Condition, DegreeSolution, DEFAULT_H_CUTOFF,
};
use crate::repring::IndexData;

use super::TopologyError;

/// Fixed-point set of an involution `σ` lifted to a spin action `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedSetDescription {
    IsolatedPoints { count: u64 },
    Surface2D,
    Free { quotient_spin: bool },
    AllOfX,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinType {
    Even,
    Odd,
}

pub fn spin_type_from_fixed_set(desc: &FixedSetDescription) -> SpinType {
    match desc {
        FixedSetDescription::IsolatedPoints { .. } | FixedSetDescription::AllOfX => SpinType::Even,
        FixedSetDescription::Surface2D => SpinType::Odd,
        FixedSetDescription::Free { quotient_spin: true } => SpinType::Even,
        FixedSetDescription::Free { quotient_spin: false } => SpinType::Odd,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientArith {
    pub sigma_quotient: i64,
    pub chi_quotient: i64,
}

/// Signature and Euler characteristic of `X/σ` for an involution with
/// `fixed_points` isolated fixed points.
pub fn involution_quotient_arith(sigma_x: i64, chi_x: i64, fixed_points: u64) -> Result<QuotientArith, TopologyError> {
    if sigma_x % 2 != 0 {
        return Err(TopologyError::ParityError(format!("σ(X) = {sigma_x} is odd")));
    }
    let total = chi_x + fixed_points as i64;
    if total % 2 != 0 {
        return Err(TopologyError::ParityError(format!("χ(X) + N = {total} is odd")));
    }
    Ok(QuotientArith { sigma_quotient: sigma_x / 2, chi_quotient: total / 2 })
}

/// What the degree machinery says about one candidate splitting of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingOutcome {
    /// `(t₁, t₂)`; `t₂` is the coefficient of the trivial character, i.e. `b₂⁺(X/σ)`.
    pub t: Vec<i64>,
    pub nondegeneracy: Vec<Condition>,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Non-degenerate, and the resulting bound is violated by `m = 3`.
    Contradiction,
    /// `b₂⁺(X/σ) = 0` and the torus trace has a pole.
    NonPolynomialTrace,
    /// Degenerate; no contradiction arises.
    Allowed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qk3Classification {
    pub spin_type: SpinType,
    pub k: i64,
    pub m: i64,
    pub b2plus_quotient: i64,
    pub b2minus_quotient: Option<i64>,
    pub fixed_points: Option<u64>,
    pub quotient: Option<QuotientArith>,
    pub splittings: Vec<SplittingOutcome>,
}

const K3_K: i64 = 1;
const K3_M: i64 = 3;
const K3_SIGMA: i64 = -16;
const K3_CHI: i64 = 24;

fn splitting_outcome(ty: SpinType, s: &[i64], t: &[i64]) -> Result<(Verdict, String, Vec<Condition>), TopologyError> {
    let idx = match ty {
        SpinType::Even => IndexData::cyclic_even(1, s, t)?,
        SpinType::Odd => IndexData::odd(1, s, t)?,
    };
    let conds = check_nondegeneracy(&idx);
    if idx.t_trivial() == 0 {
        let rep = verify_theorem_c(&idx)?;
        if rep.certified {
            let detail = format!("tr_{} λ₋₁ has denominator {}", rep.element, rep.offending_denominator);
            return Ok((Verdict::NonPolynomialTrace, detail, conds));
        }
    }
    let sys = build_trace_system(&idx, DEFAULT_H_CUTOFF)?;
    let sol = solve_degree(&sys);
    match &sol {
        DegreeSolution::Unique { .. } => {
            let rep = conclude_bound(&sol, &idx)?;
            let verdict = if rep.holds_for_input { Verdict::Allowed } else { Verdict::Contradiction };
            let detail = format!("{} requires {}", rep.conclusion, rep.instantiated);
            Ok((verdict, detail, conds))
        }
        DegreeSolution::Underdetermined { skipped, .. } => {
            Ok((Verdict::Allowed, format!("degree undetermined: skipped {}", skipped.join(", ")), conds))
        }
        DegreeSolution::Inconsistent { certificate } => Ok((Verdict::Contradiction, certificate.to_string(), conds)),
    }
}

/// Runs every splitting `t₁ + t₂ = 3` (and every `s₁ + s₂ = 2`) through the
/// degree machinery and reads off the surviving `b₂⁺(X/σ)`.
pub fn classify_qk3_involution(ty: SpinType) -> Result<Qk3Classification, TopologyError> {
    let mut splittings = Vec::new();
    for t2 in 0..=K3_M {
        let t = vec![K3_M - t2, t2];
        let mut verdicts = Vec::new();
        for s1 in 0..=2 * K3_K {
            verdicts.push(splitting_outcome(ty, &[s1, 2 * K3_K - s1], &t)?);
        }
        let (verdict, detail, conds) = verdicts[0].clone();
        if verdicts.iter().any(|v| v.0 != verdict) {
            return Err(TopologyError::Inconclusive(format!("t = {t:?}: verdict depends on the splitting of s")));
        }
        splittings.push(SplittingOutcome { t, nondegeneracy: conds, verdict, detail });
    }
    let allowed: Vec<i64> =
        splittings.iter().filter(|s| s.verdict == Verdict::Allowed).map(|s| s.t[1]).collect();
    let [b2plus] = allowed[..] else {
        return Err(TopologyError::Inconclusive(format!("surviving b₂⁺(X/σ) values: {allowed:?}")));
    };
    let (fixed_points, quotient, b2minus) = match ty {
        SpinType::Odd => (None, None, None),
        SpinType::Even => {
            // σ(X/σ) = σ/2 gives b₂⁻; then χ(X/σ) = 2 + b₂ and Lefschetz give N.
            let sigma_q = K3_SIGMA / 2;
            let b2minus = b2plus - sigma_q;
            let chi_q = 2 + b2plus + b2minus;
            let n = 2 * chi_q - K3_CHI;
            let n = u64::try_from(n).map_err(|_| TopologyError::Inconclusive(format!("N = {n} < 0")))?;
            let arith = involution_quotient_arith(K3_SIGMA, K3_CHI, n)?;
            debug_assert_eq!(arith, QuotientArith { sigma_quotient: sigma_q, chi_quotient: chi_q });
            (Some(n), Some(arith), Some(b2minus))
        }
    };
    Ok(Qk3Classification {
        spin_type: ty,
        k: K3_K,
        m: K3_M,
        b2plus_quotient: b2plus,
        b2minus_quotient: b2minus,
        fixed_points,
        quotient,
        splittings,
    })
}

/// Recomputation of the branched-cover construction of an even involution
/// with 8 fixed points on a rational cohomology K3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3CoverCheck {
    pub chi_base: i64,
    pub sigma_base: i64,
    pub spheres: i64,
    pub branch_square: i64,
    pub branch_euler: i64,
    pub preimage_sphere_square: i64,
    pub chi_cover: i64,
    pub sigma_cover: i64,
    /// The intermediate signature as printed in the source construction.
    pub sigma_cover_stated: i64,
    pub sigma_cover_discrepancy: bool,
    pub chi_blown_down: i64,
    pub sigma_blown_down: i64,
    pub b2plus_blown_down: i64,
    pub spin_k: i64,
}

pub fn k3_cover_construction_check() -> K3CoverCheck {
    let (chi_base, sigma_base, spheres) = (24, -16, 8);
    let branch_square = spheres * -2;
    let branch_euler = spheres * 2;
    // Double cover branched along F: σ = 2σ(Y) − F²/2, χ = 2χ(Y) − χ(F);
    // each −2 sphere lifts to a sphere of square −1.
    let sigma_cover = 2 * sigma_base - branch_square / 2;
    let chi_cover = 2 * chi_base - branch_euler;
    let preimage_sphere_square = -2 / 2;
    let sigma_blown_down = sigma_cover - spheres * preimage_sphere_square;
    let chi_blown_down = chi_cover - spheres;
    let b2 = chi_blown_down - 2;
    let b2plus = (b2 + sigma_blown_down) / 2;
    K3CoverCheck {
        chi_base,
        sigma_base,
        spheres,
        branch_square,
        branch_euler,
        preimage_sphere_square,
        chi_cover,
        sigma_cover,
        sigma_cover_stated: 24,
        sigma_cover_discrepancy: sigma_cover != 24,
        chi_blown_down,
        sigma_blown_down,
        b2plus_blown_down: b2plus,
        spin_k: -sigma_blown_down / 16,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_types() {
        use FixedSetDescription::*;
        assert_eq!(spin_type_from_fixed_set(&Surface2D), SpinType::Odd);
        assert_eq!(spin_type_from_fixed_set(&IsolatedPoints { count: 8 }), SpinType::Even);
        assert_eq!(spin_type_from_fixed_set(&Free { quotient_spin: false }), SpinType::Odd);
        assert_eq!(spin_type_from_fixed_set(&Free { quotient_spin: true }), SpinType::Even);
        assert_eq!(spin_type_from_fixed_set(&AllOfX), SpinType::Even);
    }

    #[test]
    fn quotient_arith() {
        assert_eq!(
            involution_quotient_arith(-16, 24, 8).unwrap(),
            QuotientArith { sigma_quotient: -8, chi_quotient: 16 }
        );
        assert_eq!(involution_quotient_arith(0, 4, 0).unwrap(), QuotientArith { sigma_quotient: 0, chi_quotient: 2 });
        assert!(matches!(involution_quotient_arith(-16, 24, 7), Err(TopologyError::ParityError(_))));
    }

    #[test]
    fn qk3_even() {
        let c = classify_qk3_involution(SpinType::Even).unwrap();
        assert_eq!((c.fixed_points, c.b2plus_quotient, c.b2minus_quotient), (Some(8), 3, Some(11)));
        let v: Vec<_> = c.splittings.iter().map(|s| s.verdict).collect();
        assert_eq!(
            v,
            vec![Verdict::NonPolynomialTrace, Verdict::Contradiction, Verdict::Contradiction, Verdict::Allowed]
        );
    }

    #[test]
    fn qk3_odd() {
        let c = classify_qk3_involution(SpinType::Odd).unwrap();
        assert_eq!(c.b2plus_quotient, 1);
        let v: Vec<_> = c.splittings.iter().map(|s| s.verdict).collect();
        assert_eq!(
            v,
            vec![Verdict::NonPolynomialTrace, Verdict::Allowed, Verdict::Contradiction, Verdict::Contradiction]
        );
        // (t₁, t₂) = (2, 1) survives only because m = 2k + b₂⁺(X_1).
        let failed: Vec<_> =
            c.splittings[1].nondegeneracy.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["m ≠ 2k + b₂⁺(X_1)"]);
    }

    #[test]
    fn cover_construction() {
        let c = k3_cover_construction_check();
        assert_eq!((c.chi_cover, c.chi_blown_down, c.sigma_blown_down), (32, 24, -16));
        assert_eq!(c.sigma_cover, -24);
        assert!(c.sigma_cover_discrepancy);
        assert_eq!(c.sigma_blown_down, c.sigma_cover + 8);
        assert_eq!(c.chi_blown_down, c.chi_cover - 8);
        assert_eq!((c.b2plus_blown_down, c.spin_k), (3, 1));
    }
}
