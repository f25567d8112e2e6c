//! Concrete group elements and the enumerated finite-group engine.
//!
//! Three element families are supported: permutations of `{0, .., n-1}`,
//! invertible 2x2 matrices over `Z/m`, and pairs in `Z/m^x ⋉ Z/m`. A
//! [`FiniteGroup`] is a full enumeration of the closure of some generators;
//! everything downstream refers to elements by their index in it.

mod group;
mod modular;
mod perm;

use std::fmt;

use thiserror::Error;

pub use group::{ClassPartition, FiniteGroup, DEFAULT_ELEMENT_CAP};
pub use modular::{Mat2, SemiPair};
pub use perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot combine {left} with {right}")]
    FamilyMismatch { left: Family, right: Family },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid semidirect pair: {0}")]
    InvalidSemiPair(String),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
}

/// Element family together with its size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Permutation { degree: usize },
    Matrix2 { modulus: u32 },
    Semidirect { modulus: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Permutation { degree } => write!(f, "permutation of degree {degree}"),
            Family::Matrix2 { modulus } => write!(f, "2x2 matrix mod {modulus}"),
            Family::Semidirect { modulus } => write!(f, "semidirect pair mod {modulus}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Perm),
    Mat2(Mat2),
    Semi(SemiPair),
}

impl Element {
    pub fn family(&self) -> Family {
        match self {
            Element::Perm(p) => Family::Permutation { degree: p.degree() },
            Element::Mat2(m) => Family::Matrix2 {
                modulus: m.modulus(),
            },
            Element::Semi(s) => Family::Semidirect {
                modulus: s.modulus(),
            },
        }
    }

    pub fn identity_of(family: Family) -> Element {
        match family {
            Family::Permutation { degree } => Element::Perm(Perm::identity(degree)),
            Family::Matrix2 { modulus } => Element::Mat2(Mat2::identity(modulus)),
            Family::Semidirect { modulus } => Element::Semi(SemiPair::identity(modulus)),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Element::identity_of(self.family())
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &Element) -> Result<Element, AlgebraError> {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) if a.degree() == b.degree() => {
                Ok(Element::Perm(a.then(b)))
            }
            (Element::Mat2(a), Element::Mat2(b)) if a.modulus() == b.modulus() => {
                Ok(Element::Mat2(a.mul(b)))
            }
            (Element::Semi(a), Element::Semi(b)) if a.modulus() == b.modulus() => {
                Ok(Element::Semi(a.mul(b)))
            }
            _ => Err(AlgebraError::FamilyMismatch {
                left: self.family(),
                right: other.family(),
            }),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(p.inverse()),
            Element::Mat2(m) => Element::Mat2(m.inverse()),
            Element::Semi(s) => Element::Semi(s.inverse()),
        }
    }

    /// Least `k >= 1` with `self^k = id`.
    pub fn order(&self) -> u64 {
        let id = Element::identity_of(self.family());
        let mut power = self.clone();
        let mut k = 1;
        while power != id {
            power = power.compose(self).expect("same family");
            k += 1;
        }
        k
    }

    pub fn pow(&self, exponent: u64) -> Element {
        let mut acc = Element::identity_of(self.family());
        for _ in 0..exponent {
            acc = acc.compose(self).expect("same family");
        }
        acc
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => p.fmt(f),
            Element::Mat2(m) => m.fmt(f),
            Element::Semi(s) => s.fmt(f),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => p.fmt(f),
            Element::Mat2(m) => m.fmt(f),
            Element::Semi(s) => s.fmt(f),
        }
    }
}

impl From<Perm> for Element {
    fn from(p: Perm) -> Self {
        Element::Perm(p)
    }
}

impl From<Mat2> for Element {
    fn from(m: Mat2) -> Self {
        Element::Mat2(m)
    }
}

impl From<SemiPair> for Element {
    fn from(s: SemiPair) -> Self {
        Element::Semi(s)
    }
}
