use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::TopologyError;

/// A block of an intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    /// Diagonal entries, each `+1` or `−1`.
    #[serde(rename = "diag")]
    Diagonal(Vec<i64>),
    /// `count` copies of the hyperbolic plane `[[0,1],[1,0]]`.
    #[serde(rename = "hyperbolic")]
    Hyperbolic(u32),
}

impl Block {
    pub fn rank(&self) -> usize {
        match self {
            Block::Diagonal(e) => e.len(),
            Block::Hyperbolic(n) => 2 * *n as usize,
        }
    }
}

/// Diagonal ⊕ hyperbolic unimodular form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntersectionForm {
    pub blocks: Vec<Block>,
}

impl IntersectionForm {
    pub fn new(blocks: Vec<Block>) -> Result<Self, TopologyError> {
        let f = IntersectionForm { blocks };
        f.validate()?;
        Ok(f)
    }

    pub fn diagonal(entries: Vec<i64>) -> Result<Self, TopologyError> {
        Self::new(vec![Block::Diagonal(entries)])
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        for b in &self.blocks {
            if let Block::Diagonal(e) = b {
                if let Some(x) = e.iter().find(|x| x.abs() != 1) {
                    return Err(TopologyError::InvalidForm(format!("diagonal entry {x} is not ±1")));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Block::rank).sum()
    }

    pub fn b2plus(&self) -> i64 {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Diagonal(e) => e.iter().filter(|&&x| x > 0).count() as i64,
                Block::Hyperbolic(n) => *n as i64,
            })
            .sum()
    }

    pub fn b2minus(&self) -> i64 {
        self.rank() as i64 - self.b2plus()
    }

    pub fn signature(&self) -> i64 {
        self.b2plus() - self.b2minus()
    }

    pub fn is_even(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, Block::Hyperbolic(_)) || b.rank() == 0)
    }

    /// `x · y` under the form.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i64, TopologyError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut at = 0;
        let mut sum = 0i64;
        for b in &self.blocks {
            match b {
                Block::Diagonal(e) => {
                    for (i, d) in e.iter().enumerate() {
                        sum += d * x[at + i] * y[at + i];
                    }
                }
                Block::Hyperbolic(n) => {
                    for j in 0..*n as usize {
                        let (a, c) = (at + 2 * j, at + 2 * j + 1);
                        sum += x[a] * y[c] + x[c] * y[a];
                    }
                }
            }
            at += b.rank();
        }
        Ok(sum)
    }

    fn check_len(&self, x: &[i64]) -> Result<(), TopologyError> {
        if x.len() != self.rank() {
            return Err(TopologyError::DimensionMismatch { expected: self.rank(), got: x.len() });
        }
        Ok(())
    }
}

impl fmt::Display for IntersectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Diagonal(e) => {
                    let p = e.iter().filter(|&&x| x > 0).count();
                    let n = e.len() - p;
                    match (p, n) {
                        (_, 0) => format!("{p}<1>"),
                        (0, _) => format!("{n}<-1>"),
                        _ => format!("{p}<1> + {n}<-1>"),
                    }
                }
                Block::Hyperbolic(n) => format!("{n}H"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn class_square(form: &IntersectionForm, coords: &[i64]) -> Result<i64, TopologyError> {
    form.pairing(coords, coords)
}

/// Whether `coords · y ≡ y · y (mod 2)` for every basis vector `y`.
pub fn is_characteristic_mod2(form: &IntersectionForm, coords: &[i64]) -> Result<bool, TopologyError> {
    form.check_len(coords)?;
    let n = form.rank();
    for i in 0..n {
        let mut y = vec![0; n];
        y[i] = 1;
        let lhs = form.pairing(coords, &y)?;
        let rhs = form.pairing(&y, &y)?;
        if (lhs - rhs).is_odd() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A closed simply-connected-homology 4-manifold, described by its form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldSpec {
    pub name: String,
    pub form: IntersectionForm,
    #[serde(default)]
    pub b1: u32,
}

impl ManifoldSpec {
    pub fn new(name: impl Into<String>, form: IntersectionForm) -> Self {
        ManifoldSpec { name: name.into(), form, b1: 0 }
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.b1 != 0 {
            return Err(TopologyError::NonzeroB1(self.b1));
        }
        self.form.validate()
    }

    /// `#_N ℂP²`.
    pub fn connected_sum_cp2(n: usize) -> Self {
        Self::new(format!("#{n}CP2"), IntersectionForm { blocks: vec![Block::Diagonal(vec![1; n])] })
    }

    /// `S² × S² # ℂP²`, basis `(a, b, c)` with `(a, b)` hyperbolic.
    pub fn s2xs2_cp2() -> Self {
        Self::new(
            "S2xS2#CP2",
            IntersectionForm { blocks: vec![Block::Hyperbolic(1), Block::Diagonal(vec![1])] },
        )
    }

    pub fn b2(&self) -> i64 {
        self.form.rank() as i64
    }

    pub fn b2plus(&self) -> i64 {
        self.form.b2plus()
    }

    pub fn b2minus(&self) -> i64 {
        self.form.b2minus()
    }

    pub fn sigma(&self) -> i64 {
        self.form.signature()
    }

    pub fn chi(&self) -> i64 {
        2 - 2 * self.b1 as i64 + self.b2()
    }
}

/// A homology class in the form's basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SurfaceClass {
    pub coords: Vec<i64>,
}

impl SurfaceClass {
    pub fn new(coords: Vec<i64>) -> Self {
        SurfaceClass { coords }
    }

    pub fn square(&self, form: &IntersectionForm) -> Result<i64, TopologyError> {
        class_square(form, &self.coords)
    }

    /// gcd of the coordinates.
    pub fn divisibility(&self) -> i64 {
        self.coords.iter().fold(0i64, |acc, x| acc.gcd(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_plus_1() -> IntersectionForm {
        IntersectionForm::new(vec![Block::Hyperbolic(1), Block::Diagonal(vec![1])]).unwrap()
    }

    #[test]
    fn squares() {
        let d = IntersectionForm::diagonal(vec![1, 1]).unwrap();
        assert_eq!(class_square(&d, &[6, 2]).unwrap(), 40);
        assert_eq!(class_square(&h_plus_1(), &[4, 4, 6]).unwrap(), 68);
        assert_eq!(class_square(&h_plus_1(), &[0, 0, 0]).unwrap(), 0);
        assert!(matches!(
            class_square(&d, &[1]),
            Err(TopologyError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn characteristic() {
        let d = IntersectionForm::diagonal(vec![1, 1]).unwrap();
        assert!(is_characteristic_mod2(&d, &[3, 1]).unwrap());
        assert!(!is_characteristic_mod2(&d, &[2, 1]).unwrap());
        assert!(is_characteristic_mod2(&h_plus_1(), &[2, 2, 3]).unwrap());
        assert!(!is_characteristic_mod2(&h_plus_1(), &[1, 2, 3]).unwrap());
    }

    #[test]
    fn invariants() {
        let m = ManifoldSpec::connected_sum_cp2(3);
        assert_eq!((m.b2(), m.b2plus(), m.sigma(), m.chi()), (3, 3, 3, 5));
        let m = ManifoldSpec::s2xs2_cp2();
        assert_eq!((m.b2(), m.b2plus(), m.b2minus(), m.sigma()), (3, 2, 1, 1));
        assert!(IntersectionForm::diagonal(vec![2]).is_err());
    }

    #[test]
    fn json_shape() {
        let f = h_plus_1();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"[{"hyperbolic":1},{"diag":[1]}]"#);
        assert_eq!(serde_json::from_str::<IntersectionForm>(&s).unwrap(), f);
    }
}
