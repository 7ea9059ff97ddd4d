use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicNumber, LaurentPoly, RationalFn, RootOfUnity};

use super::element::{Basis, RepElement};
use super::group::{AElement, Character, GroupElement, GroupSpec, Parity, Pin2Part};
use super::RepError;

/// The equivariant index `s·h − t·1̃` of the Dirac-plus-forms operator.
///
/// `s` and `t` are integer group-ring polynomials over the finite part. For odd
/// type `s` lives on odd powers of `ξ` and `t` on even powers. The sum of the
/// `s` coefficients is `2k`; the sum of the `t` coefficients is `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexData {
    group: GroupSpec,
    s: BTreeMap<Character, i64>,
    t: BTreeMap<Character, i64>,
}

impl IndexData {
    pub fn new(
        group: GroupSpec,
        s: BTreeMap<Character, i64>,
        t: BTreeMap<Character, i64>,
    ) -> Result<Self, RepError> {
        group.validate()?;
        let orders = group.factor_orders();
        for chi in s.keys().chain(t.keys()) {
            if chi.0.len() != orders.len() || chi.0.iter().zip(&orders).any(|(e, n)| e >= n) {
                return Err(RepError::InvalidIndex(format!("character {:?} is not reduced", chi.0)));
            }
        }
        if let GroupSpec::Odd { .. } = group {
            if s.keys().any(|c| Parity::of(c.0[0]) != Parity::Odd) {
                return Err(RepError::ParityViolation("s must use odd powers of ξ".into()));
            }
            if t.keys().any(|c| Parity::of(c.0[0]) != Parity::Even) {
                return Err(RepError::ParityViolation("t must use even powers of ξ".into()));
            }
        }
        if let Some((chi, v)) = t.iter().find(|(_, v)| **v < 0) {
            return Err(RepError::InvalidIndex(format!("t coefficient {v} at {:?} is negative", chi.0)));
        }
        let total: i64 = s.values().sum();
        if total < 0 || total % 2 != 0 {
            return Err(RepError::InvalidIndex(format!(
                "sum of s coefficients must be an even non-negative 2k, got {total}"
            )));
        }
        let s = s.into_iter().filter(|(_, v)| *v != 0).collect();
        let t = t.into_iter().filter(|(_, v)| *v != 0).collect();
        Ok(IndexData { group, s, t })
    }

    /// `2k·h − m·1̃` for `Pin(2)` alone.
    pub fn furuta(k: i64, m: i64) -> Result<Self, RepError> {
        let g = GroupSpec::trivial();
        let c = g.trivial_character();
        Self::new(g, BTreeMap::from([(c.clone(), 2 * k)]), BTreeMap::from([(c, m)]))
    }

    /// Odd type with `s(ξ) = Σ s_i ξ^{2i−1}` and `t(ξ) = Σ t_i ξ^{2i}`,
    /// `i = 1..2^p` (so `t_{2^p}` is the invariant coefficient).
    pub fn odd(p: u32, s: &[i64], t: &[i64]) -> Result<Self, RepError> {
        let g = GroupSpec::odd(p)?;
        let n = 1usize << p;
        check_len(n, s, "s")?;
        check_len(n, t, "t")?;
        let modulus = 1u64 << (p + 1);
        let s = (1..=n).map(|i| (Character(vec![(2 * i as u64 - 1) % modulus]), s[i - 1])).collect();
        let t = (1..=n).map(|i| (Character(vec![(2 * i as u64) % modulus]), t[i - 1])).collect();
        Self::new(g, s, t)
    }

    /// Even type `ℤ/2^p` with `s(ζ) = Σ s_i ζ^i`, `t(ζ) = Σ t_i ζ^i`, `i = 1..2^p`.
    pub fn cyclic_even(p: u32, s: &[i64], t: &[i64]) -> Result<Self, RepError> {
        if p == 0 {
            check_len(1, s, "s")?;
            check_len(1, t, "t")?;
            return Self::new(
                GroupSpec::trivial(),
                BTreeMap::from([(Character(vec![]), s[0])]),
                BTreeMap::from([(Character(vec![]), t[0])]),
            );
        }
        let g = GroupSpec::cyclic_even(p)?;
        let n = 1usize << p;
        check_len(n, s, "s")?;
        check_len(n, t, "t")?;
        let s = (1..=n).map(|i| (Character(vec![(i % n) as u64]), s[i - 1])).collect();
        let t = (1..=n).map(|i| (Character(vec![(i % n) as u64]), t[i - 1])).collect();
        Self::new(g, s, t)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn s(&self) -> &BTreeMap<Character, i64> {
        &self.s
    }

    pub fn t(&self) -> &BTreeMap<Character, i64> {
        &self.t
    }

    pub fn s_at(&self, chi: &Character) -> i64 {
        self.s.get(chi).copied().unwrap_or(0)
    }

    pub fn t_at(&self, chi: &Character) -> i64 {
        self.t.get(chi).copied().unwrap_or(0)
    }

    pub fn k(&self) -> i64 {
        self.s.values().sum::<i64>() / 2
    }

    pub fn m(&self) -> i64 {
        self.t.values().sum()
    }

    /// Coefficient of the trivial character in `t`, i.e. `b₂⁺(X/A)`.
    pub fn t_trivial(&self) -> i64 {
        self.t_at(&self.group.trivial_character())
    }

    /// `(s_1, …, s_{2^p})` and `(t_1, …, t_{2^p})` in the indexing of
    /// [`IndexData::odd`] / [`IndexData::cyclic_even`]; `None` for non-cyclic groups.
    pub fn indexed(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let p = self.group.cyclic_exponent()?;
        let n = 1u64 << p;
        type CharOf = Box<dyn Fn(u64) -> Character>;
        let (s_char, t_char): (CharOf, CharOf) =
            match self.group {
                GroupSpec::Odd { .. } => {
                    let m = 2 * n;
                    (
                        Box::new(move |i| Character(vec![(2 * i - 1) % m])),
                        Box::new(move |i| Character(vec![(2 * i) % m])),
                    )
                }
                _ if p == 0 => (Box::new(|_| Character(vec![])), Box::new(|_| Character(vec![]))),
                _ => (Box::new(move |i| Character(vec![i % n])), Box::new(move |i| Character(vec![i % n]))),
            };
        Some((
            (1..=n).map(|i| self.s_at(&s_char(i))).collect(),
            (1..=n).map(|i| self.t_at(&t_char(i))).collect(),
        ))
    }

    /// `s·h − t·1̃` as a representation-ring element.
    pub fn to_rep(&self) -> RepElement {
        let mut e = RepElement::zero(&self.group);
        for (chi, v) in &self.s {
            e.add_term(Basis::H(1), chi.clone(), BigRational::from_integer(BigInt::from(*v)));
        }
        for (chi, v) in &self.t {
            e.add_term(Basis::Tilde, chi.clone(), BigRational::from_integer(BigInt::from(-*v)));
        }
        e
    }

    /// Dimension of the part of `t` invariant under the subgroup generated by
    /// `generators`, i.e. `b₂⁺` of the corresponding quotient.
    pub fn invariant_dim(&self, generators: &[AElement]) -> i64 {
        self.t
            .iter()
            .filter(|(chi, _)| generators.iter().all(|g| self.group.char_value(chi, g).is_one()))
            .map(|(_, v)| v)
            .sum()
    }

    /// `Σ_{i ≡ 0 mod 2^j} t_i = b₂⁺(X_j)`, where `X_j` is the quotient by
    /// `ℤ/2^j ⊂ ℤ/2^p`. `j = 0` gives `m`.
    pub fn quotient_b2plus(&self, j: u32) -> Result<i64, RepError> {
        let p = self.group.cyclic_exponent().ok_or(RepError::NonCyclicGroup)?;
        if j > p {
            return Err(RepError::InvalidArgument(format!("quotient level {j} exceeds p = {p}")));
        }
        if p == 0 {
            return Ok(self.m());
        }
        let gen = self.group.generator().expect("cyclic");
        let h = self.group.element_pow(&gen, 1i64 << (p - j));
        Ok(self.invariant_dim(&[h]))
    }

    /// Eigenvalue lines of `g` on `W = t·1̃`, with multiplicities.
    pub fn w_lines(&self, g: &GroupElement) -> Vec<(Eigenvalue, i64)> {
        let sign = match g.pin2 {
            Pin2Part::J => RootOfUnity::new(1, 1),
            _ => RootOfUnity::ONE,
        };
        self.t
            .iter()
            .map(|(chi, v)| {
                let root = self.group.char_value(chi, &g.finite).mul(&sign);
                (Eigenvalue { root, phi: 0 }, *v)
            })
            .collect()
    }

    /// Eigenvalue lines of `g` on `V = s·h` (two per copy of `h`).
    pub fn v_lines(&self, g: &GroupElement) -> Vec<(Eigenvalue, i64)> {
        let pair = match g.pin2 {
            Pin2Part::GenericTorus => [(RootOfUnity::ONE, 1), (RootOfUnity::ONE, -1)],
            Pin2Part::J => [(RootOfUnity::new(2, 1), 0), (RootOfUnity::new(2, 3), 0)],
            Pin2Part::TorusIdentity => [(RootOfUnity::ONE, 0), (RootOfUnity::ONE, 0)],
        };
        let mut out = Vec::new();
        for (chi, v) in &self.s {
            let c = self.group.char_value(chi, &g.finite);
            for (r, phi) in pair {
                out.push((Eigenvalue { root: c.mul(&r), phi }, *v));
            }
        }
        out
    }

    /// Dimensions of the subspaces of `V` and `W` fixed by `g`.
    pub fn fixed_dims(&self, g: &GroupElement) -> FixedDims {
        let count = |lines: Vec<(Eigenvalue, i64)>| {
            let fixed: Vec<i64> =
                lines.into_iter().filter(|(e, _)| e.is_one()).map(|(_, m)| m).collect();
            (fixed.iter().sum::<i64>(), fixed.iter().any(|m| *m < 0))
        };
        let (v, v_neg) = count(self.v_lines(g));
        let (w, w_neg) = count(self.w_lines(g));
        FixedDims { v, w, is_virtual: v_neg || w_neg }
    }

    /// `tr_g λ₋₁(W − V)`: the product over lines of `W` of `(1 − e)` divided by
    /// the product over lines of `V`.
    pub fn lambda_minus_one_trace(&self, g: &GroupElement) -> Result<RationalFn, RepError> {
        let mut net: BTreeMap<Eigenvalue, i64> = BTreeMap::new();
        for (e, m) in self.w_lines(g) {
            *net.entry(e).or_default() += m;
        }
        for (e, m) in self.v_lines(g) {
            *net.entry(e).or_default() -= m;
        }
        let mut num = LaurentPoly::one();
        let mut den = LaurentPoly::one();
        for (e, m) in net.into_iter().filter(|(_, m)| *m != 0) {
            if e.is_one() {
                if m < 0 {
                    return Err(RepError::PoleAtElement(g.label(&self.group)));
                }
                return Ok(RationalFn::from_poly(LaurentPoly::zero()));
            }
            let factor = e.one_minus();
            if m > 0 {
                num = &num * &factor.pow(m as u32);
            } else {
                den = &den * &factor.pow((-m) as u32);
            }
        }
        Ok(RationalFn::new(num, den).expect("nonzero denominator"))
    }
}

fn check_len(n: usize, v: &[i64], name: &str) -> Result<(), RepError> {
    if v.len() != n {
        return Err(RepError::InvalidIndex(format!("{name} needs {n} coefficients, got {}", v.len())));
    }
    Ok(())
}

/// An eigenvalue `root · φ^phi` of a group element on a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigenvalue {
    pub root: RootOfUnity,
    pub phi: i64,
}

impl Eigenvalue {
    /// The generic torus element has no eigenvalue `1` on any `φ^{±1}` line.
    pub fn is_one(&self) -> bool {
        self.phi == 0 && self.root.is_one()
    }

    /// `1 − e` as a Laurent polynomial.
    pub fn one_minus(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        p.add_term(self.phi, -self.root.to_number());
        p
    }
}

/// Signed fixed-subspace dimensions; `is_virtual` is set when a negative
/// multiplicity contributed to a fixed line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedDims {
    pub v: i64,
    pub w: i64,
    pub is_virtual: bool,
}

impl FixedDims {
    pub fn difference(&self) -> i64 {
        self.v - self.w
    }

    /// The dimensions as honest (non-virtual) naturals.
    pub fn honest(&self) -> Result<(u64, u64), RepError> {
        if self.is_virtual || self.v < 0 || self.w < 0 {
            return Err(RepError::NegativeMultiplicity { v: self.v, w: self.w });
        }
        Ok((self.v as u64, self.w as u64))
    }
}

/// Convenience for tests and reports: `2^e` as an exact number.
pub fn power_of_two(e: i64) -> CyclotomicNumber {
    let two = BigRational::from_integer(BigInt::from(2));
    let q = if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    };
    CyclotomicNumber::from_rational(q)
}
