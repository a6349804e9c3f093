//! Elementary abelian 2-groups `μ₂^k` and their characters.
//!
//! Group elements and characters are both sign vectors over an ordered basis;
//! the pairing is `χ(x) = Π χ_i^{[x_i = −1]}`.

use std::fmt;
use std::ops::{Mul, Neg};


use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(−1)^k`.
    pub fn pow_minus_one(k: u64) -> Self {
        Self::from_parity(k % 2 == 1)
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, k: u64) -> Self {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Self::pow_minus_one(k),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn parse(c: &str) -> Option<Self> {
        match c.trim() {
            "+" | "+1" | "1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

macro_rules! sign_vector {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub Vec<Sign>);

        impl $name {
            pub fn trivial(len: usize) -> Self {
                Self(vec![Sign::Plus; len])
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_trivial(&self) -> bool {
                self.0.iter().all(|s| *s == Sign::Plus)
            }

            pub fn get(&self, slot: usize) -> Sign {
                self.0[slot]
            }

            pub fn signs(&self) -> &[Sign] {
                &self.0
            }

            /// Decodes bit `i` of `bits` as a `−` at slot `i`.
            pub fn from_bits(bits: u64, len: usize) -> Self {
                Self((0..len).map(|i| Sign::from_parity(bits >> i & 1 == 1)).collect())
            }

            pub fn basis_vector(len: usize, slot: usize) -> Self {
                let mut v = Self::trivial(len);
                v.0[slot] = Sign::Minus;
                v
            }

            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.len(), other.len(), "sign vectors of different length");
                Self(self.0.iter().zip(&other.0).map(|(a, b)| *a * *b).collect())
            }

            /// Parses a comma-separated list like `"+,-,+"`. The empty string is
            /// the length-zero vector.
            pub fn parse(text: &str) -> Option<Self> {
                let text = text.trim();
                if text.is_empty() {
                    return Some(Self(Vec::new()));
                }
                text.split(',').map(Sign::parse).collect::<Option<Vec<_>>>().map(Self)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    };
}

sign_vector!(GroupElement);
sign_vector!(Character);

impl Character {
    /// The pairing `χ(x)`.
    pub fn eval(&self, x: &GroupElement) -> Sign {
        assert_eq!(self.len(), x.len(), "character and element over different bases");
        self.0
            .iter()
            .zip(&x.0)
            .filter(|(_, xi)| xi.is_minus())
            .map(|(c, _)| *c)
            .product()
    }
}

/// The component group `μ₂^{I⁺}` of a parameter, with basis the `I⁺` block
/// indices in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentGroup {
    pub basis: Vec<usize>,
}

impl ComponentGroup {
    pub fn new(basis: Vec<usize>) -> Self {
        Self { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        1u64 << self.rank()
    }

    /// Slot of block index `block` in the basis, if it belongs to `I⁺`.
    pub fn slot_of(&self, block: usize) -> Option<usize> {
        self.basis.iter().position(|b| *b == block)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let k = self.rank();
        (0..self.order()).map(move |bits| GroupElement::from_bits(bits, k))
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        let k = self.rank();
        (0..self.order()).map(move |bits| Character::from_bits(bits, k))
    }

    pub fn check_character(&self, chi: &Character) -> Result<()> {
        if chi.len() != self.rank() {
            return Err(Error::CharacterLength { expected: self.rank(), got: chi.len() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_bimultiplicative() {
        let g = ComponentGroup::new(vec![0, 1, 2]);
        for chi in g.characters() {
            for psi in g.characters() {
                for x in g.elements() {
                    assert_eq!(chi.mul(&psi).eval(&x), chi.eval(&x) * psi.eval(&x));
                    for y in g.elements() {
                        assert_eq!(chi.eval(&x.mul(&y)), chi.eval(&x) * chi.eval(&y));
                    }
                }
            }
        }
    }

    #[test]
    fn characters_separate_points() {
        let g = ComponentGroup::new(vec![3, 5]);
        let elements: Vec<_> = g.elements().collect();
        for x in &elements[1..] {
            assert!(g.characters().any(|chi| chi.eval(x) == Sign::Minus));
        }
    }

    #[test]
    fn parse_sign_lists() {
        assert_eq!(
            Character::parse("+,-").unwrap(),
            Character(vec![Sign::Plus, Sign::Minus])
        );
        assert_eq!(Character::parse("").unwrap().len(), 0);
        assert!(Character::parse("+,x").is_none());
        assert_eq!(Character::parse("-1, +1").unwrap().to_string(), "-,+");
    }
}
