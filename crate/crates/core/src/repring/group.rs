use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::RootOfUnity;

use super::RepError;

/// The symmetry group `Pin(2) × A` (even type) or
/// `(Pin(2) × ℤ/2^{p+1}) / (ℤ/2)` (odd type).
///
/// An even-type spec with no factors is `Pin(2)` itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Even { orders: Vec<u64> },
    Odd { p: u32 },
}

/// Residues of a character `z1^e1 * z2^e2 * …` of the finite part, one per
/// cyclic factor. For odd type there is a single residue mod `2^{p+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<u64>);

/// An element of the finite part, as residues per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AElement(pub Vec<u64>);

/// Parity class of characters of `ℤ/2^{p+1}` for odd-type groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl GroupSpec {
    /// `Pin(2)` with no finite part.
    pub fn trivial() -> Self {
        GroupSpec::Even { orders: Vec::new() }
    }

    pub fn even(orders: Vec<u64>) -> Result<Self, RepError> {
        let g = GroupSpec::Even { orders };
        g.validate()?;
        Ok(g)
    }

    pub fn cyclic_even(p: u32) -> Result<Self, RepError> {
        Self::even(vec![1u64 << p])
    }

    /// `(ℤ/2)^q`.
    pub fn elementary(q: usize) -> Self {
        GroupSpec::Even { orders: vec![2; q] }
    }

    pub fn odd(p: u32) -> Result<Self, RepError> {
        let g = GroupSpec::Odd { p };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), RepError> {
        match self {
            GroupSpec::Even { orders } => {
                for &n in orders {
                    if n < 2 || !n.is_power_of_two() || n > 1 << 20 {
                        return Err(RepError::InvalidGroup(format!(
                            "factor order {n} is not a power of two >= 2"
                        )));
                    }
                }
                Ok(())
            }
            GroupSpec::Odd { p } if *p == 0 || *p > 20 => {
                Err(RepError::InvalidGroup(format!("odd type needs 1 <= p <= 20, got {p}")))
            }
            GroupSpec::Odd { .. } => Ok(()),
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, GroupSpec::Odd { .. })
    }

    /// Orders of the cyclic factors of the ambient finite group (for odd type
    /// this is `[2^{p+1}]`).
    pub fn factor_orders(&self) -> Vec<u64> {
        match self {
            GroupSpec::Even { orders } => orders.clone(),
            GroupSpec::Odd { p } => vec![1u64 << (p + 1)],
        }
    }

    /// Cyclotomic level holding every character value.
    pub fn level(&self) -> u32 {
        self.factor_orders().iter().map(|n| n.trailing_zeros()).max().unwrap_or(0)
    }

    /// Number of distinct finite-part elements acting on `X`: `|A|` for even
    /// type, `2^p` for odd type.
    pub fn action_order(&self) -> u64 {
        match self {
            GroupSpec::Even { orders } => orders.iter().product(),
            GroupSpec::Odd { p } => 1 << p,
        }
    }

    pub fn log2_action_order(&self) -> u32 {
        self.action_order().trailing_zeros()
    }

    /// Cyclic action `ℤ/2^p`: odd type, or even type with at most one factor.
    /// Returns `p`.
    pub fn cyclic_exponent(&self) -> Option<u32> {
        match self {
            GroupSpec::Odd { p } => Some(*p),
            GroupSpec::Even { orders } if orders.is_empty() => Some(0),
            GroupSpec::Even { orders } if orders.len() == 1 => Some(orders[0].trailing_zeros()),
            GroupSpec::Even { .. } => None,
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.factor_orders().len()])
    }

    pub fn identity(&self) -> AElement {
        AElement(vec![0; self.factor_orders().len()])
    }

    /// Generator `τ` (or its lift `ν`) of a cyclic action.
    pub fn generator(&self) -> Option<AElement> {
        match self.cyclic_exponent()? {
            0 => Some(self.identity()),
            _ => Some(AElement(vec![1])),
        }
    }

    fn residues(orders: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &n in orders {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |r| {
                        let mut w = v.clone();
                        w.push(r);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Every character of the ambient finite group.
    pub fn characters(&self) -> Vec<Character> {
        Self::residues(&self.factor_orders()).into_iter().map(Character).collect()
    }

    /// Characters allowed as coefficients of a basis element of the given
    /// parity: all of them for even type, the matching exponent parity for odd
    /// type.
    pub fn characters_of_parity(&self, parity: Parity) -> Vec<Character> {
        match self {
            GroupSpec::Even { .. } => self.characters(),
            GroupSpec::Odd { .. } => {
                self.characters().into_iter().filter(|c| Parity::of(c.0[0]) == parity).collect()
            }
        }
    }

    /// Enumerated finite-part elements. For odd type only `ν^j`, `0 <= j < 2^p`:
    /// `(−u, ν^{j+2^p})` names the same element of the quotient group.
    pub fn elements(&self) -> Vec<AElement> {
        match self {
            GroupSpec::Even { orders } => Self::residues(orders).into_iter().map(AElement).collect(),
            GroupSpec::Odd { p } => (0..1u64 << p).map(|j| AElement(vec![j])).collect(),
        }
    }

    pub fn char_value(&self, chi: &Character, a: &AElement) -> RootOfUnity {
        let level = self.level();
        let orders = self.factor_orders();
        let mut e: u128 = 0;
        for ((n, c), x) in orders.iter().zip(&chi.0).zip(&a.0) {
            let scale = 1u128 << (level - n.trailing_zeros());
            e += (*c as u128 * *x as u128 % *n as u128) * scale;
        }
        RootOfUnity::new(level, (e % (1u128 << level)) as i64)
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        let orders = self.factor_orders();
        Character(a.0.iter().zip(&b.0).zip(&orders).map(|((x, y), n)| (x + y) % n).collect())
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        let orders = self.factor_orders();
        Character(
            a.0.iter()
                .zip(&orders)
                .map(|(x, n)| ((*x as i128 * k as i128).rem_euclid(*n as i128)) as u64)
                .collect(),
        )
    }

    pub fn element_pow(&self, a: &AElement, k: i64) -> AElement {
        let orders = self.factor_orders();
        AElement(
            a.0.iter()
                .zip(&orders)
                .map(|(x, n)| ((*x as i128 * k as i128).rem_euclid(*n as i128)) as u64)
                .collect(),
        )
    }

    /// Character from signed exponents, reduced mod the factor orders.
    pub fn character(&self, exponents: &[i64]) -> Result<Character, RepError> {
        let orders = self.factor_orders();
        if exponents.len() != orders.len() {
            return Err(RepError::InvalidArgument(format!(
                "character needs {} exponents, got {}",
                orders.len(),
                exponents.len()
            )));
        }
        Ok(Character(
            exponents
                .iter()
                .zip(&orders)
                .map(|(e, n)| e.rem_euclid(*n as i64) as u64)
                .collect(),
        ))
    }

    pub fn element(&self, residues: &[i64]) -> Result<AElement, RepError> {
        self.character(residues).map(|c| AElement(c.0))
    }

    pub fn is_trivial_character(&self, chi: &Character) -> bool {
        chi.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn fmt_element(&self, a: &AElement) -> String {
        if a.0.iter().all(|&x| x == 0) {
            return String::new();
        }
        match self {
            GroupSpec::Odd { .. } => format!("ν^{}", a.0[0]),
            GroupSpec::Even { .. } => {
                let parts: Vec<_> = a.0.iter().map(u64::to_string).collect();
                format!("({})", parts.join(","))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Even { orders } if orders.is_empty() => write!(f, "Pin(2)"),
            GroupSpec::Even { orders } => {
                let parts: Vec<_> = orders.iter().map(|n| format!("Z/{n}")).collect();
                write!(f, "Pin(2) x {}", parts.join(" x "))
            }
            GroupSpec::Odd { p } => write!(f, "(Pin(2) x Z/{})/(Z/2)", 1u64 << (p + 1)),
        }
    }
}

impl fmt::Display for Character {
    /// Ring-expression notation, e.g. `z1^1*z2^1`; empty for the trivial
    /// character.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| format!("z{}^{}", i + 1, e))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Which part of `Pin(2)` a group element comes from.
///
/// `J` carries no angle: every element `e^{iθ}J` has eigenvalues `±i` on `h`
/// (trace 0, determinant 1) and acts by `−1` on `1̃`, so no character in
/// scope can distinguish them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pin2Part {
    /// The formal element `φ` generating a dense subgroup of `S¹`.
    GenericTorus,
    /// Any element of the non-identity component.
    J,
    TorusIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub pin2: Pin2Part,
    pub finite: AElement,
}

impl GroupElement {
    pub fn new(pin2: Pin2Part, finite: AElement) -> Self {
        GroupElement { pin2, finite }
    }

    pub fn label(&self, group: &GroupSpec) -> String {
        let head = match self.pin2 {
            Pin2Part::GenericTorus => "φ",
            Pin2Part::J => "J",
            Pin2Part::TorusIdentity => "1",
        };
        let tail = group.fmt_element(&self.finite);
        match (tail.is_empty(), self.pin2) {
            (true, _) => head.to_string(),
            (false, Pin2Part::TorusIdentity) => tail,
            (false, _) => format!("{head}·{tail}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_group_enumerates_half_the_elements() {
        let g = GroupSpec::odd(2).unwrap();
        assert_eq!(g.elements().len(), 4);
        assert_eq!(g.characters().len(), 8);
        assert_eq!(g.characters_of_parity(Parity::Odd).len(), 4);
    }

    #[test]
    fn char_values_mix_levels() {
        let g = GroupSpec::even(vec![2, 4]).unwrap();
        let chi = Character(vec![1, 1]);
        let a = AElement(vec![1, 1]);
        // (−1)·i = −i = ζ₄³
        assert_eq!(g.char_value(&chi, &a), RootOfUnity::new(2, 3));
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(GroupSpec::even(vec![3]).is_err());
        assert!(GroupSpec::even(vec![1]).is_err());
        assert!(GroupSpec::odd(0).is_err());
    }

    #[test]
    fn trivial_group_has_one_element_and_character() {
        let g = GroupSpec::trivial();
        assert_eq!(g.elements(), vec![AElement(vec![])]);
        assert_eq!(g.characters(), vec![Character(vec![])]);
        assert!(g.char_value(&Character(vec![]), &AElement(vec![])).is_one());
    }
}
