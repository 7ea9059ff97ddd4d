use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::degree::Condition;

use super::cover::{cover_invariants, pow2, q, CoverInvariants};
use super::form::{is_characteristic_mod2, ManifoldSpec, SurfaceClass};
use super::{ratstr, TopologyError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBoundReport {
    pub manifold: String,
    pub class: Vec<i64>,
    pub p: u32,
    pub class_square: i64,
    /// Bound from `m₀ ≥ 2k + 1` alone.
    #[serde(with = "ratstr")]
    pub furuta_bound: BigRational,
    /// Bound from `m₀ ≥ 2k + 1 + p`.
    #[serde(with = "ratstr")]
    pub refined_bound: BigRational,
    /// Genera at which a chain condition degenerates and the refined bound
    /// does not apply.
    pub excluded_genera: Vec<i64>,
    pub hypotheses: Vec<Condition>,
    pub effective_min_genus: u64,
    /// Cover invariants at `g = effective_min_genus`, when integral.
    pub cover_at_effective: Option<CoverInvariants>,
}

/// `(2^p−1)^{-1} [ 5/4 ((4^p−1)/(6·2^p)·Σ² − 2^{p−1}σ) + 1 + extra − 2^{p−1} b₂ ]`.
fn bound_formula(m: &ManifoldSpec, square: i64, p: u32, extra: i64) -> BigRational {
    let two_p = q(pow2(p));
    let half = &two_p / q(2);
    let inner = (q(pow2(2 * p)) - q(1)) / (q(6) * &two_p) * q(square) - &half * q(m.sigma());
    let body = q(5) / q(4) * inner + q(1 + extra) - &half * q(m.b2());
    body / (two_p - q(1))
}

/// `[Σ]² (1 + 2^{2i−2p+1}) / 6 − b₂⁺(M)` for `i = 1..p−1`, integer values only.
pub fn excluded_genera(m: &ManifoldSpec, square: i64, p: u32) -> Vec<i64> {
    let mut out: Vec<i64> = (1..p)
        .filter_map(|i| {
            let e = 2 * i as i64 - 2 * p as i64 + 1;
            let two = if e >= 0 { q(pow2(e as u32)) } else { BigRational::one() / q(pow2((-e) as u32)) };
            let v = q(square) * (q(1) + two) / q(6) - q(m.b2plus());
            v.is_integer().then(|| v.to_integer().to_i64()).flatten()
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn ceil(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().expect("bound fits in i64")
}

/// The hypotheses of the genus bound, each evaluated on the input.
pub fn genus_hypotheses(m: &ManifoldSpec, cls: &SurfaceClass, p: u32) -> Result<Vec<Condition>, TopologyError> {
    m.validate()?;
    cls.square(&m.form)?;
    let d = pow2(p);
    let divides = cls.coords.iter().all(|c| c % d == 0);
    let characteristic = divides && {
        let half: Vec<i64> = cls.coords.iter().map(|c| c / d).collect();
        is_characteristic_mod2(&m.form, &half)?
    };
    Ok(vec![
        Condition {
            name: "p ≥ 1".into(),
            holds: p >= 1,
            detail: format!("p = {p}"),
        },
        Condition {
            name: "2^p | [Σ]".into(),
            holds: divides,
            detail: format!("divisibility of [Σ] is {}, need {d}", cls.divisibility()),
        },
        Condition {
            name: "[Σ]/2^p ≡ w₂(M) mod 2".into(),
            holds: characteristic,
            detail: if divides { "checked on every basis vector".into() } else { "not applicable".into() },
        },
        Condition {
            name: "b₂⁺(M) > 1".into(),
            holds: m.b2plus() > 1,
            detail: format!("b₂⁺(M) = {}", m.b2plus()),
        },
    ])
}

pub fn genus_bound(m: &ManifoldSpec, cls: &SurfaceClass, p: u32) -> Result<GenusBoundReport, TopologyError> {
    let hypotheses = genus_hypotheses(m, cls, p)?;
    let square = cls.square(&m.form)?;
    if let Some(bad) = hypotheses.iter().find(|c| !c.holds) {
        return Err(TopologyError::HypothesisFailed { name: bad.name.clone(), detail: bad.detail.clone() });
    }

    let furuta_bound = bound_formula(m, square, p, 0);
    let refined_bound = bound_formula(m, square, p, p as i64);
    let excluded = excluded_genera(m, square, p);
    let (lo, hi) = (ceil(&furuta_bound), ceil(&refined_bound));
    let effective = excluded.iter().copied().filter(|&e| e >= lo && e < hi).chain([hi]).min().unwrap();
    let effective_min_genus = effective.max(0) as u64;
    Ok(GenusBoundReport {
        manifold: m.name.clone(),
        class: cls.coords.clone(),
        p,
        class_square: square,
        furuta_bound,
        refined_bound,
        excluded_genera: excluded,
        hypotheses,
        effective_min_genus,
        cover_at_effective: cover_invariants(m, cls, effective_min_genus, p).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        q(n) / q(d)
    }

    #[test]
    fn corollaries() {
        let m = ManifoldSpec::connected_sum_cp2(2);
        let rep = genus_bound(&m, &SurfaceClass::new(vec![6, 2]), 1).unwrap();
        assert_eq!(rep.effective_min_genus, 10);
        assert!(rep.excluded_genera.is_empty());
        let rep = genus_bound(&ManifoldSpec::s2xs2_cp2(), &SurfaceClass::new(vec![4, 4, 6]), 1).unwrap();
        assert_eq!(rep.effective_min_genus, 19);
    }

    #[test]
    fn example_sweep() {
        for n in 2..=12usize {
            let m = ManifoldSpec::connected_sum_cp2(n);
            let rep = genus_bound(&m, &SurfaceClass::new(vec![4; n]), 2).unwrap();
            let n = n as i64;
            assert_eq!(rep.refined_bound, r(8 * n + 3, 3));
            assert_eq!(rep.furuta_bound, r(8 * n + 1, 3));
            assert_eq!(rep.excluded_genera, vec![3 * n]);
            let expect = if n <= 5 { 3 * n } else { (8 * n + 3 + 2) / 3 };
            assert_eq!(rep.effective_min_genus as i64, expect, "N = {n}");
        }
    }

    #[test]
    fn hypothesis_failures() {
        let m = ManifoldSpec::connected_sum_cp2(1);
        assert!(matches!(
            genus_bound(&m, &SurfaceClass::new(vec![6]), 1),
            Err(TopologyError::HypothesisFailed { name, .. }) if name == "b₂⁺(M) > 1"
        ));
        let m = ManifoldSpec::connected_sum_cp2(2);
        assert!(matches!(
            genus_bound(&m, &SurfaceClass::new(vec![4, 2]), 1),
            Err(TopologyError::HypothesisFailed { name, .. }) if name == "[Σ]/2^p ≡ w₂(M) mod 2"
        ));
        assert!(matches!(
            genus_bound(&m, &SurfaceClass::new(vec![4, 2]), 2),
            Err(TopologyError::HypothesisFailed { name, .. }) if name == "2^p | [Σ]"
        ));
    }
}
