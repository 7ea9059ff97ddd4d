use std::cmp::max;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycloError;

/// A root of unity `exp(2πi · exponent / 2^level)`, kept in lowest terms.
///
/// Equal roots always have equal representations, so this type is usable as a
/// map key when grouping eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    level: u32,
    exponent: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { level: 0, exponent: 0 };

    pub fn new(level: u32, exponent: i64) -> Self {
        let modulus = 1i128 << level;
        let e = (exponent as i128).rem_euclid(modulus) as u64;
        let mut root = RootOfUnity { level, exponent: e };
        root.reduce();
        root
    }

    fn reduce(&mut self) {
        if self.exponent == 0 {
            self.level = 0;
            return;
        }
        while self.level > 0 && self.exponent.is_multiple_of(2) {
            self.exponent /= 2;
            self.level -= 1;
        }
    }

    /// Level of the smallest `ζ_{2^level}` power equal to this root.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    /// Exponent of this root as a power of `ζ_{2^level}` for any `level` at least
    /// [`RootOfUnity::level`].
    pub fn exponent_at(&self, level: u32) -> u64 {
        debug_assert!(level >= self.level);
        self.exponent << (level - self.level)
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let level = max(self.level, other.level);
        RootOfUnity::new(
            level,
            (self.exponent_at(level) + other.exponent_at(level)) as i64,
        )
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(self.level, -(self.exponent as i64))
    }

    pub fn pow(&self, n: i64) -> RootOfUnity {
        let modulus = 1i128 << self.level;
        let e = (self.exponent as i128 * n as i128).rem_euclid(modulus);
        RootOfUnity::new(self.level, e as i64)
    }

    pub fn to_number(&self) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(self.level.max(1), self.exponent_at(self.level.max(1)) as i64)
    }

    pub fn to_complex(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * self.exponent as f64 / (1u64 << self.level) as f64;
        Complex64::from_polar(1.0, angle)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.level, self.exponent) {
            (0, _) => write!(f, "1"),
            (1, _) => write!(f, "-1"),
            (l, e) => write!(f, "ζ[{l}]^{e}"),
        }
    }
}

/// An exact element of `ℚ(ζ_{2^N})`.
///
/// Stored as coordinates in the power basis `1, ζ, …, ζ^{2^{N-1}-1}` modulo
/// `ζ^{2^{N-1}} = -1`. The level is always the smallest one that can hold the
/// value, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    level: u32,
    coeffs: Vec<BigRational>,
}

fn width(level: u32) -> usize {
    1usize << (level - 1)
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber { level: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        CyclotomicNumber { level: 1, coeffs: vec![q] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ_{2^level}^power`.
    pub fn root_of_unity(level: u32, power: i64) -> Self {
        assert!(level >= 1, "root_of_unity needs level >= 1");
        let n = width(level) as i64;
        let e = power.rem_euclid(2 * n);
        let mut coeffs = vec![BigRational::zero(); n as usize];
        if e < n {
            coeffs[e as usize] = BigRational::one();
        } else {
            coeffs[(e - n) as usize] = -BigRational::one();
        }
        Self::from_parts(level, coeffs)
    }

    /// Builds a value from power-basis coordinates at `level`. The coordinate
    /// vector must have length `2^{level-1}`.
    pub fn from_coeffs(level: u32, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        if level == 0 || coeffs.len() != width(level) {
            return Err(CycloError::BadCoefficientLength { level, len: coeffs.len() });
        }
        Ok(Self::from_parts(level, coeffs))
    }

    fn from_parts(level: u32, coeffs: Vec<BigRational>) -> Self {
        let mut v = CyclotomicNumber { level, coeffs };
        v.canonicalize();
        v
    }

    fn canonicalize(&mut self) {
        while self.level > 1 && self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero) {
            self.coeffs = self.coeffs.iter().step_by(2).cloned().collect();
            self.level -= 1;
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coordinates after embedding into `ℚ(ζ_{2^level})`.
    pub fn coeffs_at(&self, level: u32) -> Vec<BigRational> {
        assert!(level >= self.level);
        let step = 1usize << (level - self.level);
        let mut out = vec![BigRational::zero(); width(level)];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.level == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.level == 1 && self.coeffs[0].is_one()
    }

    /// The value as a rational number, if it lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.level == 1).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_parts(self.level, self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        Ok(self.inv_nonzero())
    }

    // Split a = b(ζ²) + ζ·c(ζ²); then a·(b − ζc) = b² − ζ²c² lies one level down.
    fn inv_nonzero(&self) -> Self {
        if self.level == 1 {
            return Self::from_rational(self.coeffs[0].recip());
        }
        let sub = self.level - 1;
        let even: Vec<_> = self.coeffs.iter().step_by(2).cloned().collect();
        let odd: Vec<_> = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        let b = Self::from_parts(sub, even);
        let c = Self::from_parts(sub, odd);
        let zeta = Self::root_of_unity(self.level, 1);
        let conj = &b.lift(self.level) - &(&zeta * &c.lift(self.level));
        let norm = &(&b * &b) - &(&Self::root_of_unity(sub, 1) * &(&c * &c));
        &conj * &norm.inv_nonzero()
    }

    fn lift(&self, level: u32) -> Self {
        CyclotomicNumber { level, coeffs: self.coeffs_at(level) }
    }

    pub fn pow(&self, n: i64) -> Result<Self, CycloError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugate (the Galois automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let n = width(self.level);
        let mut out = vec![BigRational::zero(); n];
        out[0] = self.coeffs[0].clone();
        for i in 1..n {
            // ζ^{-i} = −ζ^{n−i}
            out[n - i] = -self.coeffs[i].clone();
        }
        Self::from_parts(self.level, out)
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = 1u64 << self.level;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let angle = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl Default for CyclotomicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for CyclotomicNumber {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<RootOfUnity> for CyclotomicNumber {
    fn from(r: RootOfUnity) -> Self {
        r.to_number()
    }
}

impl Add<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let level = max(self.level, rhs.level);
        let mut a = self.coeffs_at(level);
        let step = 1usize << (level - rhs.level);
        for (i, c) in rhs.coeffs.iter().enumerate() {
            a[i * step] += c;
        }
        CyclotomicNumber::from_parts(level, a)
    }
}

impl Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let level = max(self.level, rhs.level);
        let a = self.coeffs_at(level);
        let b = rhs.coeffs_at(level);
        let n = width(level);
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let prod = x * y;
                let k = i + j;
                // negacyclic fold: ζ^n = −1
                if k < n {
                    out[k] += prod;
                } else {
                    out[k - n] -= prod;
                }
            }
        }
        CyclotomicNumber::from_parts(level, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Writes `|q|` for a nonzero rational with the sign handled by the caller.
pub(crate) fn fmt_abs_rational(q: &BigRational) -> String {
    let a = q.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", fmt_abs_rational(c))?;
            } else if c.abs().is_one() {
                write!(f, "ζ[{}]^{}", self.level, i)?;
            } else {
                write!(f, "{}*ζ[{}]^{}", fmt_abs_rational(c), self.level, i)?;
            }
        }
        Ok(())
    }
}
