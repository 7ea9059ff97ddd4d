use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::degree::{odd_conditions, Condition};

use super::form::{is_characteristic_mod2, ManifoldSpec, SurfaceClass};
use super::TopologyError;

pub(crate) fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn pow2(e: u32) -> i64 {
    1i64 << e
}

/// Invariants of the `2^p`-fold cyclic cover `X → M` branched along `Σ`, and
/// of its intermediate quotients `X_i = X / (ℤ/2^i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInvariants {
    pub k: i64,
    /// `m[i] = b₂⁺(X_i)`, `i = 0..=p`.
    pub m: Vec<i64>,
}

/// `k` of the cover as an exact rational: `(−2^p σ + (4^p−1)/(3·2^p)·Σ²) / 16`.
pub fn cover_k(sigma: i64, square: i64, p: u32) -> BigRational {
    let two_p = q(pow2(p));
    let four_p = q(pow2(2 * p));
    (-(&two_p * q(sigma)) + (four_p - q(1)) / (q(3) * &two_p) * q(square)) / q(16)
}

/// `b₂⁺(X_i) = 2^{p−i} b₂⁺(M) + (2^{p−i}−1) g − (4^{p−i}−1)/(6·2^{p−i})·Σ²`.
pub fn cover_m(b2plus: i64, square: i64, genus: &BigRational, p: u32, i: u32) -> BigRational {
    let r = p - i;
    let two = q(pow2(r));
    let four = q(pow2(2 * r));
    &two * q(b2plus) + (&two - q(1)) * genus - (four - q(1)) / (q(6) * &two) * q(square)
}

fn integral(name: String, v: BigRational) -> Result<i64, TopologyError> {
    if !v.is_integer() || v.is_negative() {
        return Err(TopologyError::NonIntegralInvariant { name, value: v.to_string() });
    }
    v.to_integer().to_i64().ok_or(TopologyError::NonIntegralInvariant { name: "overflow".into(), value: v.to_string() })
}

/// Checks that `2^p` divides `Σ` and `Σ/2^p` is characteristic.
pub fn spin_condition(m: &ManifoldSpec, cls: &SurfaceClass, p: u32) -> Result<(), TopologyError> {
    let d = pow2(p);
    if let Some(c) = cls.coords.iter().find(|c| *c % d != 0) {
        return Err(TopologyError::SpinConditionFailed(format!("2^{p} does not divide coordinate {c}")));
    }
    let half: Vec<i64> = cls.coords.iter().map(|c| c / d).collect();
    if !is_characteristic_mod2(&m.form, &half)? {
        return Err(TopologyError::SpinConditionFailed(format!("Σ/2^{p} is not characteristic")));
    }
    Ok(())
}

pub fn cover_invariants(
    m: &ManifoldSpec,
    cls: &SurfaceClass,
    genus: u64,
    p: u32,
) -> Result<CoverInvariants, TopologyError> {
    m.validate()?;
    let square = cls.square(&m.form)?;
    spin_condition(m, cls, p)?;
    let k = integral("k".into(), cover_k(m.sigma(), square, p))?;
    let g = q(genus as i64);
    let ms = (0..=p)
        .map(|i| integral(format!("m_{i}"), cover_m(m.b2plus(), square, &g, p, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CoverInvariants { k, m: ms })
}

/// Linear constraints on the `t_i` of a cover's index data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConstraints {
    pub p: u32,
    pub invariants: CoverInvariants,
    /// `Σ s_i = 2k`.
    pub s_total: i64,
    /// `level_sums[a] = Σ_{i ≡ 2^a mod 2^{a+1}} t_i` for `a < p`, and
    /// `level_sums[p] = t_{2^p}`.
    pub level_sums: Vec<i64>,
    pub equations: Vec<String>,
    pub nondegeneracy: Vec<Condition>,
}

pub fn index_from_cover(
    m: &ManifoldSpec,
    cls: &SurfaceClass,
    genus: u64,
    p: u32,
) -> Result<CoverConstraints, TopologyError> {
    let inv = cover_invariants(m, cls, genus, p)?;
    let p_us = p as usize;
    let mut level_sums: Vec<i64> = (0..p_us).map(|a| inv.m[a] - inv.m[a + 1]).collect();
    level_sums.push(inv.m[p_us]);
    let n = pow2(p);
    let mut equations = Vec::new();
    for a in 0..=p {
        let step = pow2(a);
        let lhs = if a == p {
            format!("t_{n}")
        } else {
            let idx: Vec<String> = (1..=n).filter(|i| i % (2 * step) == step).map(|i| format!("t_{i}")).collect();
            idx.join(" + ")
        };
        equations.push(format!("{lhs} = {}", level_sums[a as usize]));
    }
    Ok(CoverConstraints {
        p,
        s_total: 2 * inv.k,
        level_sums,
        equations,
        nondegeneracy: odd_conditions(inv.k, &inv.m),
        invariants: inv,
    })
}
