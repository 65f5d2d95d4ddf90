//! Truncated iterated Laurent series `F((t₁))…((tₙ))`.
//!
//! A series is a finite map from exponent vectors to nonzero coefficients,
//! together with a precision frontier: every exponent at or above `prec` is
//! unknown. `prec = None` means the series is exact.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::coeff::{Coefficient, Rat, F2};
use crate::error::{Error, Result};
use crate::group::{Coord, Dyadic, GroupElem};

/// Default working window: this many steps of the last coordinate past the valuation.
pub const DEFAULT_WINDOW: i64 = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct Series<K: Coefficient = Rat, C: Coord = i64> {
    n: usize,
    terms: BTreeMap<GroupElem<C>, K>,
    prec: Option<GroupElem<C>>,
}

/// Series over `𝔽₂` with dyadic exponents.
pub type Char2Series = Series<F2, Dyadic>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson<C: Coord> {
    pub exponent: Vec<C>,
    pub coeff: String,
}

fn min_prec<C: Coord>(a: Option<GroupElem<C>>, b: Option<GroupElem<C>>) -> Option<GroupElem<C>> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Whether some multiple `k·step` (`step > 0`) reaches `goal`. Fails when
/// `goal` is positive on coordinates where `step` is still zero.
pub fn reaches<C: Coord>(step: &GroupElem<C>, goal: &GroupElem<C>) -> bool {
    let zero = C::from_int(0);
    let lead = step.coords().iter().position(|&c| c != zero).unwrap_or(step.dim());
    let prefix = &goal.coords()[..lead];
    prefix.iter().find(|&&c| c != zero).is_none_or(|&c| c < zero)
}

/// `g + w·e_n`: the default precision `w` steps past `g`.
pub fn window_past<C: Coord>(g: &GroupElem<C>, w: i64) -> GroupElem<C> {
    let mut c = g.coords().to_vec();
    let last = c.len() - 1;
    c[last] = c[last] + C::from_int(w);
    GroupElem::new(c)
}

impl<K: Coefficient, C: Coord> Series<K, C> {
    pub fn new(
        n: usize,
        terms: impl IntoIterator<Item = (GroupElem<C>, K)>,
        prec: Option<GroupElem<C>>,
    ) -> Result<Self> {
        if let Some(p) = &prec {
            check_len(n, p.dim())?;
        }
        let mut s = Series {
            n,
            terms: BTreeMap::new(),
            prec,
        };
        for (g, c) in terms {
            check_len(n, g.dim())?;
            s.add_term(g, c);
        }
        s.drop_unknown();
        Ok(s)
    }

    pub fn zero(n: usize) -> Self {
        Series {
            n,
            terms: BTreeMap::new(),
            prec: None,
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(K::one(), GroupElem::zero(n))
    }

    pub fn constant(n: usize, c: K) -> Self {
        Self::monomial(c, GroupElem::zero(n))
    }

    /// `c·tᵍ`.
    pub fn monomial(c: K, g: GroupElem<C>) -> Self {
        let mut s = Self::zero(g.dim());
        s.add_term(g, c);
        s
    }

    /// The pure error term `O(tᵍ)`.
    pub fn big_o(g: GroupElem<C>) -> Self {
        Series {
            n: g.dim(),
            terms: BTreeMap::new(),
            prec: Some(g),
        }
    }

    fn add_term(&mut self, g: GroupElem<C>, c: K) {
        match self.terms.entry(g) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn drop_unknown(&mut self) {
        if let Some(p) = &self.prec {
            let _ = self.terms.split_off(p);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem<C>, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, g: &GroupElem<C>) -> Option<&K> {
        self.terms.get(g)
    }

    pub fn prec(&self) -> Option<&GroupElem<C>> {
        self.prec.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// No known terms and no unknown ones.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// `None` is the valuation `∞` of the zero series.
    pub fn val(&self) -> Result<Option<GroupElem<C>>> {
        match self.terms.keys().next() {
            Some(g) => Ok(Some(g.clone())),
            None if self.prec.is_none() => Ok(None),
            None => Err(Error::PrecisionIndeterminate),
        }
    }

    /// The valuation of a nonzero series.
    pub fn valuation(&self) -> Result<GroupElem<C>> {
        self.val()?.ok_or(Error::ZeroInput)
    }

    pub fn leading(&self) -> Result<(GroupElem<C>, K)> {
        let g = self.valuation()?;
        let c = self.terms[&g].clone();
        Ok((g, c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        check_len(self.n, other.n)
    }

    /// Drop everything at or above `p`.
    pub fn truncate(&self, p: &GroupElem<C>) -> Self {
        let mut s = self.clone();
        s.prec = min_prec(s.prec, Some(p.clone()));
        s.drop_unknown();
        s
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = Series {
            n: self.n,
            terms: self.terms.clone(),
            prec: min_prec(self.prec.clone(), other.prec.clone()),
        };
        for (g, c) in &other.terms {
            s.add_term(g.clone(), c.clone());
        }
        s.drop_unknown();
        Ok(s)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::zero(self.n));
        }
        let low = |s: &Self| s.terms.keys().next().cloned().or_else(|| s.prec.clone());
        let (la, lb) = (low(self).unwrap(), low(other).unwrap());
        let prec = min_prec(
            other.prec.as_ref().map(|pb| &la + pb),
            self.prec.as_ref().map(|pa| &lb + pa),
        );
        let mut s = Series {
            n: self.n,
            terms: BTreeMap::new(),
            prec,
        };
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let e = g + h;
                if s.prec.as_ref().is_some_and(|p| e >= *p) {
                    continue;
                }
                s.add_term(e, a.clone() * b.clone());
            }
        }
        Ok(s)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        s
    }

    /// Multiply by `tᵍ`.
    pub fn shift(&self, g: &GroupElem<C>) -> Self {
        Series {
            n: self.n,
            terms: self.terms.iter().map(|(h, c)| (h + g, c.clone())).collect(),
            prec: self.prec.as_ref().map(|p| p + g),
        }
    }

    /// `self²`. In characteristic two squaring is additive, so exponents and
    /// precision both double.
    pub fn square(&self) -> Self {
        if K::CHARACTERISTIC != 2 {
            return self * self;
        }
        Series {
            n: self.n,
            terms: self.terms.iter().map(|(g, c)| (g.double(), c.clone() * c.clone())).collect(),
            prec: self.prec.as_ref().map(GroupElem::double),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The default precision for results built from `self`.
    pub fn default_target(&self) -> Result<GroupElem<C>> {
        Ok(window_past(&self.valuation()?, DEFAULT_WINDOW))
    }

    /// `1/f` through `target` (absolute exponent), by leading-term division
    /// and a geometric series.
    pub fn inverse(&self, target: Option<&GroupElem<C>>) -> Result<Self> {
        let (v, c) = match self.val() {
            Ok(Some(_)) => self.leading()?,
            Ok(None) => return Err(Error::ZeroInput),
            Err(e) => return Err(e),
        };
        let c_inv = c.inv().ok_or(Error::ZeroInput)?;
        let neg_v = -&v;
        let target = match target {
            Some(t) => {
                check_len(self.n, t.dim())?;
                t.clone()
            }
            None => window_past(&neg_v, DEFAULT_WINDOW),
        };
        let relative = &target + &v;
        // f = c·t^v·(1 + h)
        let normalized = self.shift(&neg_v).scale(&c_inv);
        let h = normalized.try_sub(&Self::one(self.n))?;
        if h.is_exact_zero() {
            return Ok(Self::monomial(c_inv, neg_v));
        }
        if let Ok(Some(step)) = h.val() {
            let goal = h.prec.clone().map_or(relative.clone(), |p| p.min(relative.clone()));
            if !reaches(&step, &goal) {
                return Err(Error::UnsupportedScope(
                    "precision target lies past a level the expansion cannot reach".into(),
                ));
            }
        }
        let minus_h = -&h;
        let mut term = Self::one(self.n);
        let mut sum = Self::one(self.n).truncate(&relative);
        loop {
            term = term.try_mul(&minus_h)?.truncate(&relative);
            let done = term.terms.is_empty();
            sum = sum.try_add(&term)?;
            if done {
                break;
            }
        }
        Ok(sum.shift(&neg_v).scale(&c_inv))
    }

    /// `self / other`, with the default target of the quotient.
    pub fn try_div(&self, other: &Self, target: Option<&GroupElem<C>>) -> Result<Self> {
        let vq = &self.valuation()? - &other.valuation()?;
        let target = match target {
            Some(t) => t.clone(),
            None => window_past(&vq, DEFAULT_WINDOW),
        };
        let inv_target = &target - &self.valuation()?;
        let inv = other.inverse(Some(&inv_target))?;
        let q = self.try_mul(&inv)?;
        if q.is_exact() {
            Ok(q)
        } else {
            Ok(q.truncate(&target))
        }
    }

    /// Do the two series agree on every exponent below `through`, with both
    /// known that far?
    pub fn agrees_through(&self, other: &Self, through: &GroupElem<C>) -> bool {
        let known = |s: &Self| s.prec.as_ref().is_none_or(|p| p >= through);
        known(self)
            && known(other)
            && self.terms.range(..through.clone()).eq(other.terms.range(..through.clone()))
    }

    pub fn to_json(&self) -> Vec<TermJson<C>> {
        self.terms
            .iter()
            .map(|(g, c)| TermJson {
                exponent: g.coords().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(n: usize, terms: &[TermJson<C>]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| Ok((GroupElem::new(t.exponent.clone()), K::parse_coeff(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Series::new(n, parsed, None)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl<K: Coefficient, C: Coord> Add for &Series<K, C> {
    type Output = Series<K, C>;
    fn add(self, rhs: &Series<K, C>) -> Series<K, C> {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl<K: Coefficient, C: Coord> Sub for &Series<K, C> {
    type Output = Series<K, C>;
    fn sub(self, rhs: &Series<K, C>) -> Series<K, C> {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl<K: Coefficient, C: Coord> Mul for &Series<K, C> {
    type Output = Series<K, C>;
    fn mul(self, rhs: &Series<K, C>) -> Series<K, C> {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

impl<K: Coefficient, C: Coord> Neg for &Series<K, C> {
    type Output = Series<K, C>;
    fn neg(self) -> Series<K, C> {
        Series {
            n: self.n,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c.clone())).collect(),
            prec: self.prec.clone(),
        }
    }
}

fn write_monomial<C: Coord>(f: &mut fmt::Formatter<'_>, g: &GroupElem<C>) -> fmt::Result {
    let mut first = true;
    for (i, c) in g.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if g.dim() == 1 {
            write!(f, "X")?;
        } else {
            write!(f, "t{}", i + 1)?;
        }
        if *c == C::from_int(1) {
            continue;
        }
        match c.to_int() {
            Some(v) => write!(f, "^{v}")?,
            None => write!(f, "^({c})")?,
        }
    }
    Ok(())
}

impl<K: Coefficient, C: Coord> fmt::Display for Series<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, c) in &self.terms {
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            if g.is_zero() {
                write!(f, "{body}")?;
                continue;
            }
            if body != "1" {
                if body.contains('/') {
                    write!(f, "({body})*")?;
                } else {
                    write!(f, "{body}*")?;
                }
            }
            write_monomial(f, g)?;
        }
        if let Some(p) = &self.prec {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(")?;
            if p.is_zero() {
                write!(f, "1")?;
            } else {
                write_monomial(f, p)?;
            }
            write!(f, ")")?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<K: Coefficient, C: Coord> fmt::Debug for Series<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Membership in the ring `A = 𝔙(H)`: `val f ∈ H ∪ G_{≥e}`.
pub fn ring_membership<K: Coefficient, C: Coord>(
    f: &Series<K, C>,
    h: &crate::group::ConvexSubgroup,
) -> Result<bool> {
    h.check(&GroupElem::<C>::zero(f.dim()))?;
    match f.val()? {
        None => Ok(true),
        Some(v) => Ok(h.in_value_monoid(&v)),
    }
}

/// Membership in the unit group `A^× = {val ∈ H}`.
pub fn unit_membership<K: Coefficient, C: Coord>(
    f: &Series<K, C>,
    h: &crate::group::ConvexSubgroup,
) -> Result<bool> {
    h.check(&GroupElem::<C>::zero(f.dim()))?;
    Ok(h.contains(&f.valuation()?))
}

impl<K: Coefficient, C: Coord> Series<K, C> {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.prec.is_none()
            && self.terms.iter().next().is_some_and(|(g, c)| g.is_zero() && c.is_one())
    }
}
