use std::fmt;
use std::ops::{Div, Mul};

use num_complex::Complex64;

use super::{CycloError, CyclotomicNumber, LaurentPoly};

// Dense ordinary polynomial, lowest degree first, no trailing zeros.
type Dense = Vec<CyclotomicNumber>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(CyclotomicNumber::is_zero) {
        p.pop();
    }
}

fn to_dense(p: &LaurentPoly, shift: i64) -> Dense {
    let Some(top) = p.max_exponent() else {
        return Vec::new();
    };
    let mut out = vec![CyclotomicNumber::zero(); (top - shift + 1) as usize];
    for (e, c) in p.terms() {
        out[(e - shift) as usize] = c.clone();
    }
    out
}

fn from_dense(p: &Dense, shift: i64) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())))
}

/// Euclidean division over the field; `b` must be nonzero.
pub(crate) fn divrem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("divisor has nonzero leading coefficient");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![CyclotomicNumber::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = &r[r.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            let t = &factor * bc;
            r[shift + i] = &r[shift + i] - &t;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn make_monic(p: &Dense) -> Dense {
    let inv = p.last().expect("nonzero").inv().expect("nonzero");
    p.iter().map(|c| c * &inv).collect()
}

/// Monic gcd of two ordinary polynomials (at least one nonzero).
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&x)
}

/// Laurent-polynomial gcd: monic, constant term nonzero (unit monomial factors
/// are discarded).
pub fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let da = a.min_exponent().map(|s| to_dense(a, s)).unwrap_or_default();
    let db = b.min_exponent().map(|s| to_dense(b, s)).unwrap_or_default();
    if da.is_empty() && db.is_empty() {
        return LaurentPoly::zero();
    }
    from_dense(&gcd(&da, &db), 0)
}

/// Exact division of Laurent polynomials; `None` when `b` does not divide `a`.
pub fn laurent_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let sb = b.min_exponent()?;
    let Some(sa) = a.min_exponent() else {
        return Some(LaurentPoly::zero());
    };
    let (q, r) = divrem(&to_dense(a, sa), &to_dense(b, sb));
    r.is_empty().then(|| from_dense(&q, sa - sb))
}

/// A quotient of Laurent polynomials in `φ`, kept in lowest terms.
///
/// Canonical form: the denominator is an ordinary monic polynomial with nonzero
/// constant term, coprime to the numerator. Any monomial factor lives in the
/// numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalFn {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self, CycloError> {
        let sd = denominator.min_exponent().ok_or(CycloError::ZeroDenominator)?;
        let Some(sn) = numerator.min_exponent() else {
            return Ok(Self::from_poly(LaurentPoly::zero()));
        };
        let n = to_dense(&numerator, sn);
        let d = to_dense(&denominator, sd);
        let g = gcd(&n, &d);
        let (n, _) = divrem(&n, &g);
        let (d, _) = divrem(&d, &g);
        let lead_inv = d.last().expect("nonzero").inv().expect("nonzero");
        let n: Dense = n.iter().map(|c| c * &lead_inv).collect();
        let d: Dense = d.iter().map(|c| c * &lead_inv).collect();
        Ok(RationalFn { numerator: from_dense(&n, sn - sd), denominator: from_dense(&d, 0) })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn { numerator: p, denominator: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    /// True iff the reduced denominator is a unit, i.e. the value is a Laurent
    /// polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.denominator.as_constant().is_some()
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.numerator)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn pow(&self, n: i64) -> Result<Self, CycloError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs() as u32;
        Ok(RationalFn { numerator: base.numerator.pow(k), denominator: base.denominator.pow(k) })
    }

    pub fn eval_complex(&self, point: Complex64) -> Complex64 {
        self.numerator.eval_complex(point) / self.denominator.eval_complex(point)
    }

    /// Laurent expansion around `φ = 0` of the reduced value, up to and
    /// including `φ^order`.
    pub fn series(&self, order: i64) -> LaurentPoly {
        let d = to_dense(&self.denominator, 0);
        let d0_inv = d[0].inv().expect("constant term is nonzero in canonical form");
        let start = self.numerator.min_exponent().unwrap_or(0);
        // 1/d as a power series up to the needed length.
        let len = (order - start + 1).max(0) as usize;
        let mut inv = vec![CyclotomicNumber::zero(); len];
        for i in 0..len {
            let mut acc = if i == 0 { CyclotomicNumber::one() } else { CyclotomicNumber::zero() };
            for j in 1..=i.min(d.len() - 1) {
                acc = &acc - &(&d[j] * &inv[i - j]);
            }
            inv[i] = &acc * &d0_inv;
        }
        let mut out = LaurentPoly::zero();
        for (e, c) in self.numerator.terms() {
            for (i, x) in inv.iter().enumerate() {
                let k = e + i as i64;
                if k <= order {
                    out.add_term(k, c * x);
                }
            }
        }
        out
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.numerator * &rhs.numerator, &self.denominator * &rhs.denominator)
            .expect("product of nonzero denominators")
    }
}

impl Div<&RationalFn> for &RationalFn {
    type Output = Result<RationalFn, CycloError>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFn) -> Result<RationalFn, CycloError> {
        Ok(self * &rhs.inv()?)
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    fn lp(terms: &[(i64, CyclotomicNumber)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().cloned())
    }

    #[test]
    fn difference_of_squares_cancels() {
        let num = lp(&[(0, int(1)), (2, int(-1))]);
        let den = lp(&[(0, int(1)), (1, int(-1))]);
        let r = RationalFn::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &lp(&[(0, int(1)), (1, int(1))]));
    }

    #[test]
    fn simple_pole_survives() {
        let nu = CyclotomicNumber::root_of_unity(3, 1);
        let den = lp(&[(0, int(1)), (1, -&nu)]);
        let r = RationalFn::new(LaurentPoly::one(), den).unwrap();
        assert!(!r.is_polynomial());
    }

    #[test]
    fn common_factor_cancels_to_constant() {
        let nu = CyclotomicNumber::root_of_unity(3, 1);
        let one_minus_nu = &CyclotomicNumber::one() - &nu;
        let lin = lp(&[(0, int(1)), (1, -&nu)]);
        let r = RationalFn::new(lin.scale(&one_minus_nu), lin).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator().as_constant(), Some(one_minus_nu));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFn::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(CycloError::ZeroDenominator)
        ));
    }

    #[test]
    fn monomial_denominator_is_a_unit() {
        let r = RationalFn::new(LaurentPoly::one(), LaurentPoly::monomial(3, int(2))).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &LaurentPoly::monomial(-3, CyclotomicNumber::from_rational(
            num_rational::BigRational::new(1.into(), 2.into()),
        )));
    }

    #[test]
    fn geometric_series_expansion() {
        // 1/(1 − φ) = 1 + φ + φ² + …
        let r = RationalFn::new(LaurentPoly::one(), lp(&[(0, int(1)), (1, int(-1))])).unwrap();
        let s = r.series(3);
        for e in 0..=3 {
            assert_eq!(s.coeff_at(e), int(1));
        }
    }
}
