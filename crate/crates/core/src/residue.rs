//! Quasi-quadratic modules of a euclidean residue field: `{0}`, `F²`, `−F²`, `F`.
//!
//! Over a perfect field of characteristic two only `Zero` and `All` occur.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::coeff::Rat;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(c: &Rat) -> Option<Sign> {
        if c.is_zero() {
            None
        } else if c.is_positive() {
            Some(Sign::Pos)
        } else {
            Some(Sign::Neg)
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueModule {
    Zero,
    Pos,
    Neg,
    All,
}

use ResidueModule::*;

impl ResidueModule {
    pub const ALL: [ResidueModule; 4] = [Zero, Pos, Neg, All];

    fn bits(self) -> (bool, bool) {
        match self {
            Zero => (false, false),
            Pos => (true, false),
            Neg => (false, true),
            All => (true, true),
        }
    }

    fn from_bits(pos: bool, neg: bool) -> Self {
        match (pos, neg) {
            (false, false) => Zero,
            (true, false) => Pos,
            (false, true) => Neg,
            (true, true) => All,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Zero => "zero",
            Pos => "pos",
            Neg => "neg",
            All => "all",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for ResidueModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Lattice join.
pub fn rsum(a: ResidueModule, b: ResidueModule) -> ResidueModule {
    let (ap, an) = a.bits();
    let (bp, bn) = b.bits();
    ResidueModule::from_bits(ap || bp, an || bn)
}

/// Lattice meet.
pub fn rmeet(a: ResidueModule, b: ResidueModule) -> ResidueModule {
    let (ap, an) = a.bits();
    let (bp, bn) = b.bits();
    ResidueModule::from_bits(ap && bp, an && bn)
}

pub fn rleq(a: ResidueModule, b: ResidueModule) -> bool {
    rsum(a, b) == b
}

/// Does `m` contain an element of the given sign (`None` is zero)?
pub fn rcontains(m: ResidueModule, s: Option<Sign>) -> bool {
    let (p, n) = m.bits();
    match s {
        None => true,
        Some(Sign::Pos) => p,
        Some(Sign::Neg) => n,
    }
}

/// The module generated by one nonzero element.
pub fn rgenerated(s: Sign) -> ResidueModule {
    match s {
        Sign::Pos => Pos,
        Sign::Neg => Neg,
    }
}

pub fn ris_proper(m: ResidueModule) -> bool {
    m != All
}

pub fn ris_quadratic(m: ResidueModule) -> bool {
    rleq(Pos, m)
}

/// `M ∪ −M = F` with prime support.
pub fn ris_semiordering(m: ResidueModule) -> bool {
    matches!(m, Pos | Neg)
}

/// The module spanned by products `c₁c₂` with `c₁ ∈ a`, `c₂ ∈ b`.
pub fn rproduct(a: ResidueModule, b: ResidueModule) -> ResidueModule {
    let has = |want: Sign| signs(a).any(|x| signs(b).any(|y| x * y == want));
    ResidueModule::from_bits(has(Sign::Pos), has(Sign::Neg))
}

/// The signs that occur among the nonzero members.
pub fn signs(m: ResidueModule) -> impl Iterator<Item = Sign> {
    [Sign::Pos, Sign::Neg].into_iter().filter(move |&s| rcontains(m, Some(s)))
}
