use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{fmt_abs_rational, CyclotomicNumber, LaurentPoly};

use super::group::{Character, GroupElement, GroupSpec, Parity, Pin2Part};
use super::RepError;

/// Irreducible `Pin(2)` representations: `1`, `1̃`, and the two-dimensional
/// `h_i` (`i >= 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    One,
    Tilde,
    H(u32),
}

impl Basis {
    /// Parity of the finite-part characters allowed alongside this basis
    /// element in `R(G_odd)`.
    pub fn parity(&self) -> Parity {
        match self {
            Basis::One | Basis::Tilde => Parity::Even,
            Basis::H(i) => Parity::of(*i as u64),
        }
    }

    /// `a · b` under `1̃² = 1`, `1̃ h_i = h_i`, `h_i h_j = h_{i+j} + h_{|i−j|}`,
    /// with `h_0 = 1 + 1̃`.
    fn product(a: Basis, b: Basis) -> Vec<Basis> {
        use Basis::*;
        match (a, b) {
            (One, x) | (x, One) => vec![x],
            (Tilde, Tilde) => vec![One],
            (Tilde, H(i)) | (H(i), Tilde) => vec![H(i)],
            (H(i), H(j)) => {
                let mut out = vec![H(i + j)];
                match i.abs_diff(j) {
                    0 => out.extend([One, Tilde]),
                    d => out.push(H(d)),
                }
                out
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Basis::One => String::new(),
            Basis::Tilde => "t1".into(),
            Basis::H(i) => format!("h{i}"),
        }
    }

    fn display_rank(&self) -> (u8, std::cmp::Reverse<u32>) {
        match self {
            Basis::H(i) => (0, std::cmp::Reverse(*i)),
            Basis::One => (1, std::cmp::Reverse(0)),
            Basis::Tilde => (2, std::cmp::Reverse(0)),
        }
    }
}

/// A group-ring polynomial over the finite part: character ↦ coefficient.
pub type GroupRingPoly = BTreeMap<Character, BigRational>;

/// An element of the representation ring, written
/// `β₀ + β̃₀·1̃ + Σ βᵢ·hᵢ` with each `β` a group-ring polynomial.
///
/// For odd type the element lives in the ambient ring of
/// `Pin(2) × ℤ/2^{p+1}`; [`RepElement::is_parity_valid`] tells whether it lies in
/// the subring `R(G_odd)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepElement {
    group: GroupSpec,
    terms: BTreeMap<(Basis, Character), BigRational>,
}

impl RepElement {
    pub fn zero(group: &GroupSpec) -> Self {
        RepElement { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn one(group: &GroupSpec) -> Self {
        Self::term(group, Basis::One, group.trivial_character(), BigRational::one())
    }

    pub fn integer(group: &GroupSpec, n: i64) -> Self {
        Self::term(group, Basis::One, group.trivial_character(), BigRational::from_integer(n.into()))
    }

    /// `1̃`.
    pub fn tilde(group: &GroupSpec) -> Self {
        Self::term(group, Basis::Tilde, group.trivial_character(), BigRational::one())
    }

    /// `h_i`; `h_0` is `1 + 1̃`.
    pub fn h(group: &GroupSpec, i: u32) -> Self {
        if i == 0 {
            return &Self::one(group) + &Self::tilde(group);
        }
        Self::term(group, Basis::H(i), group.trivial_character(), BigRational::one())
    }

    /// The one-dimensional representation of the finite part with the given
    /// character (in the ambient ring for odd type).
    pub fn character_rep(group: &GroupSpec, chi: Character) -> Self {
        Self::term(group, Basis::One, chi, BigRational::one())
    }

    /// `coeff · chi · basis`, rejecting terms outside `R(G_odd)`.
    pub fn monomial(
        group: &GroupSpec,
        basis: Basis,
        chi: Character,
        coeff: BigRational,
    ) -> Result<Self, RepError> {
        let e = Self::term(group, basis, chi, coeff);
        if !e.is_parity_valid() {
            return Err(RepError::ParityViolation(e.to_string()));
        }
        Ok(e)
    }

    pub(crate) fn term(group: &GroupSpec, basis: Basis, chi: Character, coeff: BigRational) -> Self {
        let mut e = Self::zero(group);
        e.add_term(basis, chi, coeff);
        e
    }

    pub(crate) fn add_term(&mut self, basis: Basis, chi: Character, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (basis, chi);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Assembles `c0 + c0_tilde·1̃ + Σ h_coeffs[i]·h_i`.
    pub fn from_parts(
        group: &GroupSpec,
        c0: &GroupRingPoly,
        c0_tilde: &GroupRingPoly,
        h_coeffs: &BTreeMap<u32, GroupRingPoly>,
    ) -> Self {
        let mut e = Self::zero(group);
        for (chi, q) in c0 {
            e.add_term(Basis::One, chi.clone(), q.clone());
        }
        for (chi, q) in c0_tilde {
            e.add_term(Basis::Tilde, chi.clone(), q.clone());
        }
        for (i, poly) in h_coeffs {
            for (chi, q) in poly {
                if *i == 0 {
                    e.add_term(Basis::One, chi.clone(), q.clone());
                    e.add_term(Basis::Tilde, chi.clone(), q.clone());
                } else {
                    e.add_term(Basis::H(*i), chi.clone(), q.clone());
                }
            }
        }
        e
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Character, &BigRational)> {
        self.terms.iter().map(|((b, c), q)| (*b, c, q))
    }

    pub fn coefficient(&self, basis: Basis, chi: &Character) -> BigRational {
        self.terms.get(&(basis, chi.clone())).cloned().unwrap_or_else(BigRational::zero)
    }

    fn part(&self, basis: Basis) -> GroupRingPoly {
        self.terms
            .iter()
            .filter(|((b, _), _)| *b == basis)
            .map(|((_, c), q)| (c.clone(), q.clone()))
            .collect()
    }

    /// Coefficient of `1`.
    pub fn c0(&self) -> GroupRingPoly {
        self.part(Basis::One)
    }

    /// Coefficient of `1̃`.
    pub fn c0_tilde(&self) -> GroupRingPoly {
        self.part(Basis::Tilde)
    }

    /// Coefficient of `h_i`, `i >= 1`.
    pub fn h_coeff(&self, i: u32) -> GroupRingPoly {
        self.part(Basis::H(i))
    }

    /// Indices `i` with a nonzero `h_i` coefficient.
    pub fn h_indices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .terms
            .keys()
            .filter_map(|(b, _)| match b {
                Basis::H(i) => Some(*i),
                _ => None,
            })
            .collect();
        v.dedup();
        v
    }

    /// True unless this is an odd-type element with a term whose character
    /// parity does not match its basis element.
    pub fn is_parity_valid(&self) -> bool {
        match self.group {
            GroupSpec::Even { .. } => true,
            GroupSpec::Odd { .. } => {
                self.terms.keys().all(|(b, c)| Parity::of(c.0[0]) == b.parity())
            }
        }
    }

    /// All coefficients are integers, i.e. this is a genuine virtual
    /// representation.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|q| q.is_integer())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut e = Self::zero(&self.group);
        for ((b, c), x) in &self.terms {
            e.add_term(*b, c.clone(), x * q);
        }
        e
    }

    fn check_group(&self, other: &RepElement) -> Result<(), RepError> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RepElement) -> Result<Self, RepError> {
        self.check_group(other)?;
        let mut e = self.clone();
        for ((b, c), q) in &other.terms {
            e.add_term(*b, c.clone(), q.clone());
        }
        Ok(e)
    }

    pub fn try_mul(&self, other: &RepElement) -> Result<Self, RepError> {
        self.check_group(other)?;
        let mut e = Self::zero(&self.group);
        for ((b1, c1), q1) in &self.terms {
            for ((b2, c2), q2) in &other.terms {
                let chi = self.group.char_mul(c1, c2);
                let q = q1 * q2;
                for b in Basis::product(*b1, *b2) {
                    e.add_term(b, chi.clone(), q.clone());
                }
            }
        }
        Ok(e)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.group);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The trace of `g`.
    ///
    /// `1̃ ↦ −1` on the non-identity component and `1` otherwise; `h_i ↦ φ^i + φ^{-i}`
    /// at the generic torus element, `0` at `J`, `2` at the identity; finite
    /// characters are evaluated at `g`'s finite part.
    pub fn character(&self, g: &GroupElement) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((b, chi), q) in &self.terms {
            let value = self.group.char_value(chi, &g.finite).to_number().scale(q);
            let pin = match (b, g.pin2) {
                (Basis::One, _) => LaurentPoly::one(),
                (Basis::Tilde, Pin2Part::J) => LaurentPoly::constant(CyclotomicNumber::from_integer(-1)),
                (Basis::Tilde, _) => LaurentPoly::one(),
                (Basis::H(i), Pin2Part::GenericTorus) => LaurentPoly::phi_cosine(*i as i64),
                (Basis::H(_), Pin2Part::J) => LaurentPoly::zero(),
                (Basis::H(_), Pin2Part::TorusIdentity) => {
                    LaurentPoly::constant(CyclotomicNumber::from_integer(2))
                }
            };
            out = &out + &pin.scale(&value);
        }
        out
    }

    /// Restriction to `R(S¹) = ℤ[θ, θ^{-1}]`, returned with `θ` as the
    /// variable: `1̃ ↦ 1`, finite characters `↦ 1`, `h_i ↦ θ^i + θ^{-i}`.
    pub fn restrict_to_circle(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((b, _), q) in &self.terms {
            let c = CyclotomicNumber::from_rational(q.clone());
            let v = match b {
                Basis::One | Basis::Tilde => LaurentPoly::constant(c),
                Basis::H(i) => LaurentPoly::phi_cosine(*i as i64).scale(&c),
            };
            out = &out + &v;
        }
        out
    }

    /// Dimension of the (virtual) representation.
    pub fn dimension(&self) -> BigRational {
        self.terms
            .iter()
            .map(|((b, _), q)| match b {
                Basis::H(_) => q * BigRational::from_integer(BigInt::from(2)),
                _ => q.clone(),
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl Add<&RepElement> for &RepElement {
    type Output = RepElement;
    fn add(self, rhs: &RepElement) -> RepElement {
        self.try_add(rhs).expect("group mismatch in RepElement addition")
    }
}

impl Sub<&RepElement> for &RepElement {
    type Output = RepElement;
    fn sub(self, rhs: &RepElement) -> RepElement {
        self + &(-rhs)
    }
}

impl Neg for &RepElement {
    type Output = RepElement;
    fn neg(self) -> RepElement {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&RepElement> for &RepElement {
    type Output = RepElement;
    fn mul(self, rhs: &RepElement) -> RepElement {
        self.try_mul(rhs).expect("group mismatch in RepElement product")
    }
}

impl fmt::Display for RepElement {
    /// Normal form in ring-expression notation: `h` terms by descending index,
    /// then `1`, then `t1`; e.g. `h2 + 1 + t1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|((b1, c1), _), ((b2, c2), _)| {
            b1.display_rank().cmp(&b2.display_rank()).then_with(|| c1.cmp(c2))
        });
        for (n, ((b, chi), q)) in entries.into_iter().enumerate() {
            let neg = q.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let parts: Vec<String> =
                [chi.to_string(), b.label()].into_iter().filter(|s| !s.is_empty()).collect();
            let abs = fmt_abs_rational(q);
            if parts.is_empty() {
                write!(f, "{abs}")?;
            } else if q.abs().is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{abs}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g0() -> GroupSpec {
        GroupSpec::trivial()
    }

    #[test]
    fn h_squared() {
        let h = RepElement::h(&g0(), 1);
        assert_eq!((&h * &h).to_string(), "h2 + 1 + t1");
    }

    #[test]
    fn tilde_absorbed_by_h() {
        let g = g0();
        assert_eq!(&RepElement::tilde(&g) * &RepElement::h(&g, 3), RepElement::h(&g, 3));
    }

    #[test]
    fn one_minus_tilde_squared() {
        let g = g0();
        let x = &RepElement::one(&g) - &RepElement::tilde(&g);
        assert_eq!((&x * &x).to_string(), "2 - 2*t1");
        assert_eq!(&x * &x, x.scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn h1_h2() {
        let g = g0();
        assert_eq!((&RepElement::h(&g, 1) * &RepElement::h(&g, 2)).to_string(), "h3 + h1");
    }

    #[test]
    fn restriction_values() {
        let g = GroupSpec::odd(1).unwrap();
        assert_eq!(RepElement::h(&g, 2).restrict_to_circle(), LaurentPoly::phi_cosine(2));
        let x = &RepElement::tilde(&g) + &RepElement::character_rep(&g, Character(vec![2]));
        assert_eq!(x.restrict_to_circle(), LaurentPoly::constant(CyclotomicNumber::from_integer(2)));
    }

    #[test]
    fn character_at_j_of_index_shape() {
        // 2k·h − m·1̃ at J is m.
        let g = g0();
        let x = &RepElement::h(&g, 1).scale(&BigRational::from_integer(4.into()))
            - &RepElement::tilde(&g).scale(&BigRational::from_integer(3.into()));
        let j = GroupElement::new(Pin2Part::J, g.identity());
        assert_eq!(x.character(&j), LaurentPoly::constant(CyclotomicNumber::from_integer(3)));
    }

    #[test]
    fn h1_character_at_phi() {
        let g = g0();
        let phi = GroupElement::new(Pin2Part::GenericTorus, g.identity());
        assert_eq!(RepElement::h(&g, 1).character(&phi), LaurentPoly::phi_cosine(1));
    }

    #[test]
    fn xi_squared_tilde_at_j_nu() {
        // For p = 1, ξ(ν) = ζ₄, so ξ²(ν) = −1 and tr_J 1̃ = −1: product 1.
        let g = GroupSpec::odd(1).unwrap();
        let x = RepElement::monomial(&g, Basis::Tilde, Character(vec![2]), BigRational::one()).unwrap();
        let jnu = GroupElement::new(Pin2Part::J, g.generator().unwrap());
        // Oracle: a 1×1 matrix product of the two scalar actions.
        let xi_nu = num_complex::Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2);
        let oracle = xi_nu * xi_nu * -1.0;
        let got = x.character(&jnu).as_constant().unwrap();
        assert!((got.to_complex() - oracle).norm() < 1e-12);
        assert!(got.is_one());
    }

    #[test]
    fn monomial_rejects_wrong_parity() {
        let g = GroupSpec::odd(1).unwrap();
        assert!(matches!(
            RepElement::monomial(&g, Basis::One, Character(vec![1]), BigRational::one()),
            Err(RepError::ParityViolation(_))
        ));
        assert!(RepElement::monomial(&g, Basis::H(1), Character(vec![1]), BigRational::one()).is_ok());
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = RepElement::one(&g0());
        let b = RepElement::one(&GroupSpec::odd(1).unwrap());
        assert!(matches!(a.try_mul(&b), Err(RepError::GroupMismatch { .. })));
    }
}
