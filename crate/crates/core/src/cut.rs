//! Upward-closed subsets of a lexicographically ordered coordinate space.
//!
//! Every such subset we need is described by a prefix `p` of length `k` and a
//! flag: the set holds the points whose first `k` coordinates exceed `p`, plus
//! (when `inclusive`) those whose first `k` coordinates equal `p`. The empty
//! prefix gives the full space (inclusive) or the empty set (not inclusive).
//!
//! Over integer coordinates an exclusive cut is rewritten as the inclusive cut
//! at the successor, so equal sets always have equal representations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Coord;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cut<C: Coord = i64> {
    dim: usize,
    prefix: Vec<C>,
    inclusive: bool,
}

/// Wire form of a cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum CutSpec<C: Coord> {
    Empty,
    ClosedRay {
        g0: Vec<C>,
    },
    OpenCut {
        k: usize,
        prefix: Vec<C>,
        inclusive: bool,
    },
}

impl<C: Coord> Cut<C> {
    pub fn new(dim: usize, prefix: Vec<C>, inclusive: bool) -> Result<Self> {
        if prefix.len() > dim {
            return Err(Error::MalformedCut(format!(
                "prefix of length {} in dimension {dim}",
                prefix.len()
            )));
        }
        let mut cut = Cut {
            dim,
            prefix,
            inclusive,
        };
        cut.normalize();
        Ok(cut)
    }

    pub fn empty(dim: usize) -> Self {
        Cut {
            dim,
            prefix: Vec::new(),
            inclusive: false,
        }
    }

    pub fn full(dim: usize) -> Self {
        Cut {
            dim,
            prefix: Vec::new(),
            inclusive: true,
        }
    }

    /// `{x : x ≥ point}`.
    pub fn at_least(point: &[C]) -> Self {
        Cut {
            dim: point.len(),
            prefix: point.to_vec(),
            inclusive: true,
        }
    }

    /// `{x : x > point}`.
    pub fn above(point: &[C]) -> Self {
        let mut cut = Cut {
            dim: point.len(),
            prefix: point.to_vec(),
            inclusive: false,
        };
        cut.normalize();
        cut
    }

    fn normalize(&mut self) {
        if self.inclusive || self.prefix.is_empty() {
            return;
        }
        let last = self.prefix.last_mut().unwrap();
        if let Some(next) = last.successor() {
            *last = next;
            self.inclusive = true;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prefix(&self) -> &[C] {
        &self.prefix
    }

    pub fn is_inclusive(&self) -> bool {
        self.inclusive
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && !self.inclusive
    }

    pub fn is_full(&self) -> bool {
        self.prefix.is_empty() && self.inclusive
    }

    pub fn contains(&self, x: &[C]) -> bool {
        debug_assert_eq!(x.len(), self.dim);
        match x[..self.prefix.len()].cmp(&self.prefix) {
            Ordering::Greater => true,
            Ordering::Equal => self.inclusive,
            Ordering::Less => false,
        }
    }

    /// The least element, when there is one.
    pub fn min_element(&self) -> Option<&[C]> {
        (self.inclusive && self.prefix.len() == self.dim).then_some(&self.prefix[..])
    }

    /// Position of the lower boundary on the line; a larger boundary is a smaller set.
    fn boundary_cmp(&self, other: &Self) -> Ordering {
        let common = self.prefix.len().min(other.prefix.len());
        match self.prefix[..common].cmp(&other.prefix[..common]) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let side = |inclusive: bool| {
            if inclusive {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        };
        match self.prefix.len().cmp(&other.prefix.len()) {
            Ordering::Less => side(self.inclusive),
            Ordering::Greater => side(other.inclusive).reverse(),
            Ordering::Equal => match (self.inclusive, other.inclusive) {
                (a, b) if a == b => Ordering::Equal,
                (true, false) => Ordering::Less,
                _ => Ordering::Greater,
            },
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.boundary_cmp(other) != Ordering::Less
    }

    /// Set inclusion as an order: `Less` means strictly smaller set.
    pub fn inclusion_cmp(&self, other: &Self) -> Ordering {
        self.boundary_cmp(other).reverse()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        if self.boundary_cmp(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        if self.boundary_cmp(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// `{x + v : x ∈ self}`.
    pub fn translate(&self, v: &[C]) -> Self {
        let prefix = self.prefix.iter().zip(v).map(|(&a, &b)| a + b).collect();
        Cut {
            dim: self.dim,
            prefix,
            inclusive: self.inclusive,
        }
    }

    pub fn to_spec(&self) -> CutSpec<C> {
        if self.is_empty() {
            CutSpec::Empty
        } else if let Some(g0) = self.min_element() {
            CutSpec::ClosedRay { g0: g0.to_vec() }
        } else {
            CutSpec::OpenCut {
                k: self.prefix.len(),
                prefix: self.prefix.clone(),
                inclusive: self.inclusive,
            }
        }
    }

    pub fn from_spec(spec: &CutSpec<C>, dim: usize) -> Result<Self> {
        match spec {
            CutSpec::Empty => Ok(Cut::empty(dim)),
            CutSpec::ClosedRay { g0 } => {
                if g0.len() != dim {
                    return Err(Error::MalformedCut(format!(
                        "closed ray point of length {} in dimension {dim}",
                        g0.len()
                    )));
                }
                Ok(Cut::at_least(g0))
            }
            CutSpec::OpenCut {
                k,
                prefix,
                inclusive,
            } => {
                if *k != prefix.len() {
                    return Err(Error::MalformedCut(format!(
                        "k = {k} but prefix has length {}",
                        prefix.len()
                    )));
                }
                Cut::new(dim, prefix.clone(), *inclusive)
            }
        }
    }
}

impl Cut<i64> {
    /// The upward closure of the points of `self` whose coordinates have the
    /// given parities.
    pub fn parity_hull(&self, parity: &[u8]) -> Self {
        debug_assert_eq!(parity.len(), self.dim);
        if !self.inclusive {
            return self.clone();
        }
        let mismatch = self
            .prefix
            .iter()
            .zip(parity)
            .position(|(c, &p)| c.rem_euclid(2) as u8 != p & 1);
        match mismatch {
            None => self.clone(),
            Some(r) => {
                let mut prefix = self.prefix[..=r].to_vec();
                prefix[r] += 1;
                Cut {
                    dim: self.dim,
                    prefix,
                    inclusive: true,
                }
            }
        }
    }
}

impl<C: Coord> fmt::Debug for Cut<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let p: Vec<String> = self.prefix.iter().map(|c| c.to_string()).collect();
        let op = if self.inclusive { "≥" } else { ">" };
        write!(f, "x[..{}] {op} ({})", self.prefix.len(), p.join(","))
    }
}
