//! The value group `ℤⁿ` (or `ℤ[1/2]ⁿ`) under the lexicographic order.
//!
//! The group is written additively: the identity is the zero vector, the
//! product `g·h` is coordinate-wise addition, and the square `g²` is `2g`.
//! The first coordinate is the most significant one, so `t1` is the dominant
//! indeterminate of the iterated Laurent series field.
//!
//! The convex subgroups of `ℤⁿ` are exactly the coordinate-suffix subgroups
//! `H_j = {g : g₁ = … = g_j = 0}`. `H_n = {0}` belongs to the valuation ring
//! `B` itself and `H_0 = G` to the whole field `K`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported dimension unless a caller asks for more.
pub const DEFAULT_MAX_DIM: usize = 8;

/// A coordinate of an exponent vector.
pub trait Coord:
    Copy
    + Ord
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Default
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(value: i64) -> Self;

    /// The integer value, when the coordinate is integral.
    fn to_int(self) -> Option<i64>;

    /// The next coordinate value, if the coordinate line is discrete.
    fn successor(self) -> Option<Self>;

    /// Exact halving; `None` when the result is not representable.
    fn half(self) -> Option<Self>;

    fn parse_coord(text: &str) -> Result<Self>;

    fn is_zero(self) -> bool {
        self == Self::default()
    }

    fn double(self) -> Self {
        self + self
    }
}

impl Coord for i64 {
    fn from_int(value: i64) -> Self {
        value
    }

    fn to_int(self) -> Option<i64> {
        Some(self)
    }

    fn successor(self) -> Option<Self> {
        Some(self + 1)
    }

    fn half(self) -> Option<Self> {
        if self % 2 == 0 {
            Some(self / 2)
        } else {
            None
        }
    }

    fn parse_coord(text: &str) -> Result<Self> {
        text.trim()
            .parse::<i64>()
            .map_err(|_| Error::InvalidExponent(text.to_string()))
    }
}

/// A dyadic rational `num / 2^shift`, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    num: i64,
    shift: u32,
}

impl Dyadic {
    pub fn new(num: i64, shift: u32) -> Self {
        let mut d = Dyadic { num, shift };
        d.normalize();
        d
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn shift(self) -> u32 {
        self.shift
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.shift = 0;
            return;
        }
        while self.shift > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.shift -= 1;
        }
    }

    fn scaled(self, shift: u32) -> i128 {
        (self.num as i128) << (shift - self.shift)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.shift.max(other.shift);
        self.scaled(s).cmp(&other.scaled(s))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let s = self.shift.max(rhs.shift);
        let sum = self.scaled(s) + rhs.scaled(s);
        Dyadic::new(i64::try_from(sum).expect("dyadic overflow"), s)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            shift: self.shift,
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1i64 << self.shift)
        }
    }
}

impl Coord for Dyadic {
    fn from_int(value: i64) -> Self {
        Dyadic::new(value, 0)
    }

    fn to_int(self) -> Option<i64> {
        (self.shift == 0).then_some(self.num)
    }

    fn successor(self) -> Option<Self> {
        None
    }

    fn half(self) -> Option<Self> {
        if self.num % 2 == 0 {
            Some(Dyadic::new(self.num / 2, self.shift))
        } else {
            Some(Dyadic::new(self.num, self.shift + 1))
        }
    }

    fn parse_coord(text: &str) -> Result<Self> {
        let bad = || Error::InvalidExponent(text.to_string());
        let text = text.trim();
        match text.split_once('/') {
            None => Ok(Dyadic::from_int(text.parse().map_err(|_| bad())?)),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q <= 0 || q.count_ones() != 1 {
                    return Err(bad());
                }
                Ok(Dyadic::new(p, q.trailing_zeros()))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_int() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Dyadic::from_int(v)),
            Raw::Text(s) => Dyadic::parse_coord(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// An element of the value group, stored as its exponent vector.
///
/// The derived `Ord` is the lexicographic order with the first coordinate
/// most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem<C: Coord = i64>(Vec<C>);

impl<C: Coord> GroupElem<C> {
    pub fn new(coords: Vec<C>) -> Self {
        GroupElem(coords)
    }

    /// The identity `e`.
    pub fn zero(n: usize) -> Self {
        GroupElem(vec![C::default(); n])
    }

    /// The exponent vector of `t_{i+1}`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![C::default(); n];
        v[i] = C::from_int(1);
        GroupElem(v)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        GroupElem(coords.iter().map(|&c| C::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[C] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Strictly above the identity.
    pub fn is_positive(&self) -> bool {
        *self > Self::zero(self.dim())
    }

    pub fn is_negative(&self) -> bool {
        *self < Self::zero(self.dim())
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn double(&self) -> Self {
        GroupElem(self.0.iter().map(|c| c.double()).collect())
    }

    /// `g / 2`, when representable.
    pub fn half(&self) -> Option<Self> {
        self.0.iter().map(|c| c.half()).collect::<Option<Vec<_>>>().map(GroupElem)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut acc = Self::zero(self.dim());
        let base = if k < 0 { -self } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = &acc + &base;
        }
        acc
    }

    /// The first `j` coordinates: the image in `G/H_j`.
    pub fn head(&self, j: usize) -> &[C] {
        &self.0[..j]
    }

    pub fn tail(&self, j: usize) -> &[C] {
        &self.0[j..]
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C, C) -> C) -> Self {
        GroupElem(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl<C: Coord> fmt::Debug for GroupElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<C: Coord> fmt::Display for GroupElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<C: Coord> Add for &GroupElem<C> {
    type Output = GroupElem<C>;

    fn add(self, rhs: &GroupElem<C>) -> GroupElem<C> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<C: Coord> Sub for &GroupElem<C> {
    type Output = GroupElem<C>;

    fn sub(self, rhs: &GroupElem<C>) -> GroupElem<C> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<C: Coord> Neg for &GroupElem<C> {
    type Output = GroupElem<C>;

    fn neg(self) -> GroupElem<C> {
        GroupElem(self.0.iter().map(|&c| -c).collect())
    }
}

/// Lexicographic comparison, first coordinate most significant.
pub fn lex_cmp<C: Coord>(a: &GroupElem<C>, b: &GroupElem<C>) -> Result<Ordering> {
    a.check_dim(b)?;
    Ok(a.cmp(b))
}

/// The convex subgroup `H_j = {g : g₁ = … = g_j = 0}` of a group of dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvexSubgroup {
    j: usize,
    n: usize,
}

impl ConvexSubgroup {
    pub fn new(j: usize, n: usize) -> Result<Self> {
        Self::with_cap(j, n, DEFAULT_MAX_DIM)
    }

    pub fn with_cap(j: usize, n: usize, max_dim: usize) -> Result<Self> {
        if n == 0 || n > max_dim {
            return Err(Error::DimensionOutOfRange(n, max_dim));
        }
        if j > n {
            return Err(Error::InvalidSubgroup { j, n });
        }
        Ok(ConvexSubgroup { j, n })
    }

    /// `H = {e}`: the ring is the valuation ring `B`.
    pub fn valuation_ring(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    /// `H = G`: the ring is the field `K`.
    pub fn whole_field(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn index(&self) -> usize {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_valuation_ring(&self) -> bool {
        self.j == self.n
    }

    pub fn is_whole_field(&self) -> bool {
        self.j == 0
    }

    pub fn check<C: Coord>(&self, g: &GroupElem<C>) -> Result<()> {
        if g.dim() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            })
        }
    }

    pub fn contains<C: Coord>(&self, g: &GroupElem<C>) -> bool {
        g.head(self.j).iter().all(|c| c.is_zero())
    }

    /// Coordinates of the image of `g` in `G/H`.
    pub fn project<'a, C: Coord>(&self, g: &'a GroupElem<C>) -> &'a [C] {
        g.head(self.j)
    }

    /// Is `g ∈ H ∪ G_{≥e}`, the value set of the ring `A = 𝔙(H)`?
    pub fn in_value_monoid<C: Coord>(&self, g: &GroupElem<C>) -> bool {
        g.head(self.j).iter().find(|c| !c.is_zero()).is_none_or(|c| *c > C::default())
    }
}

/// Compare `[a]` and `[b]` in `G/H`.
pub fn quotient_cmp<C: Coord>(
    a: &GroupElem<C>,
    b: &GroupElem<C>,
    h: &ConvexSubgroup,
) -> Result<Ordering> {
    a.check_dim(b)?;
    h.check(a)?;
    Ok(h.project(a).cmp(h.project(b)))
}

/// See [`ConvexSubgroup::in_value_monoid`].
pub fn in_value_monoid<C: Coord>(g: &GroupElem<C>, h: &ConvexSubgroup) -> bool {
    h.in_value_monoid(g)
}

/// The class `ḡ ∈ G/G²`: every coordinate mod 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SquareClass(Vec<u8>);

impl SquareClass {
    pub fn new(bits: Vec<u8>) -> Self {
        SquareClass(bits.into_iter().map(|b| b & 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        SquareClass(vec![0; n])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// The group law of `G/G²`.
    pub fn combine(&self, other: &SquareClass) -> SquareClass {
        SquareClass(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// A canonical representative with 0/1 coordinates.
    pub fn representative(&self) -> GroupElem {
        GroupElem::new(self.0.iter().map(|&b| b as i64).collect())
    }

    /// All `2ⁿ` classes in lexicographic order of their bit vectors.
    pub fn all(n: usize) -> Vec<SquareClass> {
        (0..1u32 << n)
            .map(|mask| SquareClass((0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as u8).collect()))
            .collect()
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Parity of an integer exponent vector.
pub fn square_class(g: &GroupElem) -> SquareClass {
    SquareClass(g.coords().iter().map(|c| c.rem_euclid(2) as u8).collect())
}

/// The class `[[g]] ∈ G/H²`: the coset `[g]` together with the parity of
/// the coordinates inside `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedClass {
    pub head: Vec<i64>,
    pub tail_parity: Vec<u8>,
}

impl MixedClass {
    /// The full parity `ḡ` of any representative.
    pub fn square_class(&self) -> SquareClass {
        let mut bits: Vec<u8> = self.head.iter().map(|c| c.rem_euclid(2) as u8).collect();
        bits.extend_from_slice(&self.tail_parity);
        SquareClass(bits)
    }

    /// The representative whose tail coordinates are 0 or 1.
    pub fn representative(&self) -> GroupElem {
        let mut coords = self.head.clone();
        coords.extend(self.tail_parity.iter().map(|&b| b as i64));
        GroupElem::new(coords)
    }
}

pub fn mixed_class(g: &GroupElem, h: &ConvexSubgroup) -> MixedClass {
    let j = h.index();
    MixedClass {
        head: g.head(j).to_vec(),
        tail_parity: g.tail(j).iter().map(|c| c.rem_euclid(2) as u8).collect(),
    }
}
