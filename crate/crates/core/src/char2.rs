//! Quasi-quadratic modules when the residue field has characteristic two.
//!
//! The model is `𝔽₂`-series with dyadic exponents, where every strict unit is
//! a square. A module is then determined by the set of its valuations, plus
//! the residue module at the least valuation when there is one.

use serde::{Deserialize, Serialize};

use crate::angular::frobenius_root;
use crate::cut::{Cut, CutSpec};
use crate::error::{Error, Result};
use crate::group::{ConvexSubgroup, Dyadic, GroupElem};
use crate::residue::{rcontains, rmeet, rsum, ResidueModule, Sign};
use crate::series::{window_past, Char2Series, Series, DEFAULT_WINDOW};

pub type DyadicElem = GroupElem<Dyadic>;

/// `x = u² + v²` with `val u = val v = min(e, val x)`, for `val x ≠ e`.
pub fn two_square_decompose(x: &Char2Series) -> Result<(Char2Series, Char2Series)> {
    let v = x.val()?.ok_or(Error::ZeroInput)?;
    let n = x.dim();
    let zero = DyadicElem::zero(n);
    let one = Series::one(n);
    if v == zero {
        return Err(Error::UnitOfValuationRing);
    }
    if v > zero {
        return Ok((frobenius_root(&(&one + x))?, one));
    }
    // x⁻¹ has positive valuation: x⁻¹ = u'² + 1, and u = u'·x, v = x.
    // u² = (1 + x⁻¹)·x², so x⁻¹ is needed through target − 2·val x.
    let mut target = window_past(&v, DEFAULT_WINDOW);
    if let Some(p) = x.prec() {
        target = target.min(p.clone());
    }
    let inv = x.inverse(Some(&(&(&target - &v) - &v)))?;
    let root = frobenius_root(&(&one + &inv))?;
    Ok((&root * x, x.clone()))
}

/// A well-behaved set of valuations: upward closed inside `val(A)`, closed
/// under adding `val(A)`, and above every unit valuation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutSet {
    h: ConvexSubgroup,
    cut: Cut<Dyadic>,
}

impl CutSet {
    pub fn new(h: ConvexSubgroup, cut: Cut<Dyadic>) -> Result<Self> {
        if cut.dim() != h.dim() {
            return Err(Error::DimensionMismatch {
                expected: h.dim(),
                found: cut.dim(),
            });
        }
        Ok(CutSet { h, cut })
    }

    pub fn from_spec(h: ConvexSubgroup, spec: &CutSpec<Dyadic>) -> Result<Self> {
        Self::new(h, Cut::from_spec(spec, h.dim())?)
    }

    pub fn to_spec(&self) -> CutSpec<Dyadic> {
        self.cut.to_spec()
    }

    pub fn empty(h: ConvexSubgroup) -> Self {
        CutSet {
            h,
            cut: Cut::empty(h.dim()),
        }
    }

    /// `val(A)` itself, the valuations of the whole ring.
    pub fn value_set(h: ConvexSubgroup) -> Self {
        let cut = Cut::new(h.dim(), vec![Dyadic::default(); h.index()], true).expect("prefix fits");
        CutSet { h, cut }
    }

    pub fn ray(h: ConvexSubgroup, g0: &DyadicElem) -> Self {
        CutSet {
            h,
            cut: Cut::at_least(g0.coords()),
        }
    }

    pub fn subgroup(&self) -> ConvexSubgroup {
        self.h
    }

    pub fn cut(&self) -> &Cut<Dyadic> {
        &self.cut
    }

    pub fn contains(&self, g: &DyadicElem) -> bool {
        g.dim() == self.h.dim() && self.cut.contains(g.coords())
    }

    pub fn min(&self) -> Option<DyadicElem> {
        self.cut.min_element().map(|p| GroupElem::new(p.to_vec()))
    }

    pub fn is_empty(&self) -> bool {
        self.cut.is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.cut.is_subset(&other.cut)
    }

    /// Well-behaved, or `val(A)`, which stands for the whole ring.
    pub fn validate(&self) -> bool {
        if *self == Self::value_set(self.h) || self.cut.is_empty() {
            return true;
        }
        let j = self.h.index();
        let zeros = vec![Dyadic::default(); j];
        if self.h.is_valuation_ring() {
            // A = B: inside G_{≥e}
            return self.cut.is_subset(&Cut::at_least(&zeros));
        }
        // A ≠ B: a union of H-cosets lying strictly above H
        let strict = Cut::new(self.h.dim(), zeros, false).expect("prefix fits");
        j > 0 && self.cut.prefix().len() <= j && self.cut.is_subset(&strict)
    }

    /// `S ∖ {min S}`.
    pub fn without_min(&self) -> Self {
        match self.cut.min_element() {
            Some(p) => CutSet {
                h: self.h,
                cut: Cut::new(self.h.dim(), p.to_vec(), false).expect("prefix fits"),
            },
            None => self.clone(),
        }
    }
}

/// `Γ₁(S)` or `Γ₂(S, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Char2Kind {
    Gamma1 {
        #[serde(rename = "S")]
        s: CutSpec<Dyadic>,
    },
    Gamma2 {
        #[serde(rename = "S")]
        s: CutSpec<Dyadic>,
        #[serde(rename = "M")]
        m: ResidueModule,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Char2Module {
    Gamma1(CutSet),
    Gamma2(CutSet, ResidueModule),
}

impl Char2Module {
    /// `Γ₁(S)`, rewritten as `Γ₂(S, F)` when `S` has a least element.
    pub fn gamma1(s: CutSet) -> Result<Self> {
        if !s.validate() {
            return Err(Error::FamilyViolation(format!("{:?} is not well-behaved", s.cut)));
        }
        Ok(match s.min() {
            Some(_) if s.h.is_valuation_ring() => Char2Module::Gamma2(s, ResidueModule::All),
            _ => Char2Module::Gamma1(s),
        })
    }

    pub fn gamma2(s: CutSet, m: ResidueModule) -> Result<Self> {
        if !s.h.is_valuation_ring() {
            return Err(Error::FamilyViolation("Γ₂ needs A = B".into()));
        }
        if s.min().is_none() || !s.validate() {
            return Err(Error::FamilyViolation("Γ₂ needs a well-behaved set with a least element".into()));
        }
        if m == ResidueModule::Zero {
            return Err(Error::FamilyViolation("Γ₂ needs a nonzero residue module".into()));
        }
        Ok(Char2Module::Gamma2(s, m))
    }

    pub fn zero(h: ConvexSubgroup) -> Self {
        Char2Module::Gamma1(CutSet::empty(h))
    }

    pub fn whole(h: ConvexSubgroup) -> Self {
        Self::gamma1(CutSet::value_set(h)).expect("val(A) is accepted")
    }

    pub fn set(&self) -> &CutSet {
        match self {
            Char2Module::Gamma1(s) | Char2Module::Gamma2(s, _) => s,
        }
    }

    pub fn subgroup(&self) -> ConvexSubgroup {
        self.set().h
    }

    /// Membership of an abstract element with valuation `g` and residue sign
    /// `an` (`None` is the zero element).
    pub fn contains_formal(&self, g: Option<&DyadicElem>, an: Option<Sign>) -> bool {
        let Some(g) = g else {
            return true;
        };
        if !self.subgroup().in_value_monoid(g) {
            return false;
        }
        match self {
            Char2Module::Gamma1(s) => s.contains(g),
            Char2Module::Gamma2(s, m) => {
                let g0 = s.min().expect("Γ₂ has a least element");
                *g > g0 || (*g == g0 && rcontains(*m, an))
            }
        }
    }

    pub fn to_kind(&self) -> Char2Kind {
        match self {
            Char2Module::Gamma1(s) => Char2Kind::Gamma1 { s: s.to_spec() },
            Char2Module::Gamma2(s, m) => Char2Kind::Gamma2 { s: s.to_spec(), m: *m },
        }
    }

    pub fn from_kind(h: ConvexSubgroup, kind: &Char2Kind) -> Result<Self> {
        match kind {
            Char2Kind::Gamma1 { s } => Self::gamma1(CutSet::from_spec(h, s)?),
            Char2Kind::Gamma2 { s, m } => Self::gamma2(CutSet::from_spec(h, s)?, *m),
        }
    }

    /// `val(𝓜)`.
    pub fn val_set(&self) -> &CutSet {
        self.set()
    }

    /// `M_{g_min}(𝓜)` when the valuations have a least element.
    pub fn residue_at_min(&self) -> Option<ResidueModule> {
        match self {
            Char2Module::Gamma2(_, m) => Some(*m),
            Char2Module::Gamma1(_) => None,
        }
    }
}

/// Membership of a series; the nonzero residue `1 ∈ 𝔽₂` lies in every nonzero `M`.
pub fn c2_contains(m: &Char2Module, x: &Char2Series) -> Result<bool> {
    let v = x.val()?;
    let an = v.as_ref().map(|_| Sign::Pos);
    if let Char2Module::Gamma2(_, r) = m {
        if let Some(v) = &v {
            let g0 = m.set().min().expect("Γ₂ has a least element");
            if *v == g0 {
                return Ok(*r != ResidueModule::Zero);
            }
        }
    }
    Ok(m.contains_formal(v.as_ref(), an))
}

fn check_same(a: &Char2Module, b: &Char2Module) -> Result<()> {
    if a.subgroup() == b.subgroup() {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

fn strictly_inside(a: &CutSet, b: &CutSet) -> bool {
    a.is_subset(b) && a != b
}

pub fn c2_sum(a: &Char2Module, b: &Char2Module) -> Result<Char2Module> {
    use Char2Module::*;
    check_same(a, b)?;
    Ok(match (a, b) {
        (Gamma1(s1), Gamma1(s2)) => {
            if s1.is_subset(s2) {
                b.clone()
            } else {
                a.clone()
            }
        }
        (Gamma2(s1, m1), Gamma2(s2, m2)) => {
            if s1 == s2 {
                Gamma2(s1.clone(), rsum(*m1, *m2))
            } else if strictly_inside(s1, s2) {
                b.clone()
            } else {
                a.clone()
            }
        }
        (Gamma2(s1, _), Gamma1(s2)) | (Gamma1(s2), Gamma2(s1, _)) => {
            let g2 = if matches!(a, Gamma2(..)) { a } else { b };
            let g1 = if matches!(a, Gamma1(_)) { a } else { b };
            if s1.is_subset(s2) {
                g1.clone()
            } else {
                g2.clone()
            }
        }
    })
}

pub fn c2_intersect(a: &Char2Module, b: &Char2Module) -> Result<Char2Module> {
    use Char2Module::*;
    check_same(a, b)?;
    Ok(match (a, b) {
        (Gamma1(s1), Gamma1(s2)) => {
            if s1.is_subset(s2) {
                a.clone()
            } else {
                b.clone()
            }
        }
        (Gamma2(s1, m1), Gamma2(s2, m2)) => {
            if s1 == s2 {
                let meet = rmeet(*m1, *m2);
                if meet == ResidueModule::Zero {
                    Gamma1(s1.without_min())
                } else {
                    Gamma2(s1.clone(), meet)
                }
            } else if strictly_inside(s1, s2) {
                a.clone()
            } else {
                b.clone()
            }
        }
        (Gamma2(s1, _), Gamma1(s2)) | (Gamma1(s2), Gamma2(s1, _)) => {
            let g2 = if matches!(a, Gamma2(..)) { a } else { b };
            let g1 = if matches!(a, Gamma1(_)) { a } else { b };
            if s1.is_subset(s2) {
                g2.clone()
            } else {
                g1.clone()
            }
        }
    })
}

/// `𝓜 ⊆ 𝒩`.
pub fn c2_leq(a: &Char2Module, b: &Char2Module) -> bool {
    c2_intersect(a, b).is_ok_and(|m| m == *a)
}

/// The module generated by `gens`, as `Γ₁(val 𝓜)` or `Γ₂(val 𝓜, M_{g_min})`.
pub fn c2_classify(h: ConvexSubgroup, gens: &[Char2Series]) -> Result<Char2Module> {
    let mut least: Option<DyadicElem> = None;
    for f in gens {
        h.check(&DyadicElem::zero(f.dim()))?;
        let Some(v) = f.val()? else {
            continue;
        };
        if !h.in_value_monoid(&v) {
            return Err(Error::NotInRing);
        }
        if least.as_ref().is_none_or(|l| v < *l) {
            least = Some(v);
        }
    }
    let Some(g) = least else {
        return Ok(Char2Module::zero(h));
    };
    if h.is_valuation_ring() {
        return Char2Module::gamma2(CutSet::ray(h, &g), ResidueModule::All);
    }
    if h.contains(&g) {
        // a unit of A ≠ B generates everything
        return Ok(Char2Module::whole(h));
    }
    let head = h.project(&g).to_vec();
    Char2Module::gamma1(CutSet::new(h, Cut::new(h.dim(), head, true)?)?)
}
