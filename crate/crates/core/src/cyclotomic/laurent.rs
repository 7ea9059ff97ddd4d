use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::CyclotomicNumber;

/// Sparse Laurent polynomial in one formal variable `φ` with coefficients in
/// `ℚ(ζ_{2^∞})`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, CyclotomicNumber>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CyclotomicNumber::one())
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exponent: i64, c: CyclotomicNumber) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `φ` itself.
    pub fn phi() -> Self {
        Self::monomial(1, CyclotomicNumber::one())
    }

    /// `φ^i + φ^{-i}`, the circle character of `h_i`.
    pub fn phi_cosine(i: i64) -> Self {
        if i == 0 {
            return Self::constant(CyclotomicNumber::from_integer(2));
        }
        &Self::monomial(i, CyclotomicNumber::one()) + &Self::monomial(-i, CyclotomicNumber::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, CyclotomicNumber)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, c: CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exponent) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn coeff_at(&self, exponent: i64) -> CyclotomicNumber {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CyclotomicNumber)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when the polynomial is a single term `c·φ^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value, if there are no nonzero `φ` powers.
    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        match self.terms.len() {
            0 => Some(CyclotomicNumber::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.scale(q))))
    }

    /// Multiplies by `φ^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `φ ↦ φ^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Numerical value with `ζ_{2^N} = exp(2πi/2^N)` and `φ = point`.
    pub fn eval_complex(&self, point: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_complex() * point.powi(*e as i32))
            .sum()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<CyclotomicNumber> for LaurentPoly {
    fn from(c: CyclotomicNumber) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest power first.
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = match c.as_rational() {
                Some(q) if q.is_negative() => (true, (-c).to_string()),
                Some(_) => (false, c.to_string()),
                None => (false, format!("({c})")),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = body == "1";
            match *e {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "φ")?,
                1 => write!(f, "{body}*φ")?,
                _ if unit => write!(f, "φ^{e}")?,
                _ => write!(f, "{body}*φ^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(2, int(1)), (1, int(-4)), (0, int(1)), (-1, int(-1))]);
        assert_eq!(p.to_string(), "φ^2 - 4*φ + 1 - φ^-1");
    }

    #[test]
    fn square_of_phi_cosine() {
        let x = LaurentPoly::phi_cosine(1);
        let sq = &x * &x;
        let expected = LaurentPoly::from_terms([(2, int(1)), (0, int(2)), (-2, int(1))]);
        assert_eq!(sq, expected);
        assert_eq!(sq.coeff_at(0), int(2));
    }

    #[test]
    fn phi_times_inverse_minus_one_is_zero() {
        let p = LaurentPoly::phi();
        let pinv = LaurentPoly::monomial(-1, int(1));
        assert!((&(&p * &pinv) - &LaurentPoly::one()).is_zero());
    }

    #[test]
    fn no_zero_terms_stored() {
        let mut p = LaurentPoly::monomial(3, int(2));
        p.add_term(3, int(-2));
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }
}
