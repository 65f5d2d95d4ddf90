use std::sync::OnceLock;

use crate::angular::sign_of;
use crate::error::{Error, Result};
use crate::group::{square_class, ConvexSubgroup, GroupElem, SquareClass};
use crate::qq::theta::ThetaFamily;
use crate::residue::{rcontains, rleq, rproduct, ResidueModule, Sign};
use crate::series::{ring_membership, Series};

#[derive(Clone, Debug)]
pub enum Repr {
    /// The quasi-quadratic module `Σ A²fᵢ`.
    Generators(Vec<Series>),
    Family(ThetaFamily),
}

/// A quasi-quadratic module of `A = 𝔙(H)`.
#[derive(Debug)]
pub struct QQModule {
    h: ConvexSubgroup,
    repr: Repr,
    theta: OnceLock<ThetaFamily>,
}

impl Clone for QQModule {
    fn clone(&self) -> Self {
        let theta = OnceLock::new();
        if let Some(t) = self.theta.get() {
            let _ = theta.set(t.clone());
        }
        QQModule {
            h: self.h,
            repr: self.repr.clone(),
            theta,
        }
    }
}

/// `x ∈ Φ^A(M, [[g]])`.
pub fn phi_contains(m: ResidueModule, g: &GroupElem, h: &ConvexSubgroup, x: &Series) -> Result<bool> {
    h.check(g)?;
    let Some(v) = x.val()? else {
        return Ok(true);
    };
    h.check(&v)?;
    if square_class(&v) != square_class(g) {
        return Ok(false);
    }
    let same_coset = h.project(&v) == h.project(g);
    Ok((same_coset || v > *g) && rcontains(m, Some(sign_of(x)?)))
}

impl QQModule {
    /// The quasi-quadratic module generated by `gens`; zeros are dropped.
    pub fn generated(h: ConvexSubgroup, gens: Vec<Series>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for f in gens {
            h.check(&GroupElem::<i64>::zero(f.dim()))?;
            if !ring_membership(&f, &h)? {
                return Err(Error::NotInRing);
            }
            if f.val()?.is_some() {
                kept.push(f);
            }
        }
        Ok(QQModule {
            h,
            repr: Repr::Generators(kept),
            theta: OnceLock::new(),
        })
    }

    /// The quadratic module generated by `gens`, i.e. with `1` adjoined.
    pub fn quadratic(h: ConvexSubgroup, mut gens: Vec<Series>) -> Result<Self> {
        gens.insert(0, Series::one(h.dim()));
        Self::generated(h, gens)
    }

    pub fn zero(h: ConvexSubgroup) -> Self {
        QQModule {
            h,
            repr: Repr::Generators(Vec::new()),
            theta: OnceLock::new(),
        }
    }

    pub fn whole(h: ConvexSubgroup) -> Self {
        Self::from_family(ThetaFamily::whole(h))
    }

    pub fn from_family(fam: ThetaFamily) -> Self {
        let h = fam.subgroup();
        QQModule {
            h,
            repr: Repr::Family(fam.clone()),
            theta: OnceLock::from(fam),
        }
    }

    pub fn subgroup(&self) -> ConvexSubgroup {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn generators(&self) -> Option<&[Series]> {
        match &self.repr {
            Repr::Generators(g) => Some(g),
            Repr::Family(_) => None,
        }
    }

    /// Θ(𝓜), computed once.
    pub fn theta(&self) -> &ThetaFamily {
        self.theta.get_or_init(|| match &self.repr {
            Repr::Family(f) => f.clone(),
            Repr::Generators(gens) => {
                let normal: Vec<(Sign, GroupElem)> = gens
                    .iter()
                    .map(|f| (sign_of(f).expect("checked"), f.valuation().expect("checked")))
                    .collect();
                ThetaFamily::generated(self.h, &normal).expect("generators lie in A")
            }
        })
    }

    /// `M_g(𝓜)`.
    pub fn mg_of(&self, g: &GroupElem) -> Result<ResidueModule> {
        self.theta().assign(g)
    }

    pub fn contains(&self, x: &Series) -> Result<bool> {
        self.h.check(&GroupElem::<i64>::zero(x.dim()))?;
        let Some(v) = x.val()? else {
            return Ok(true);
        };
        if !self.h.in_value_monoid(&v) {
            return Ok(false);
        }
        Ok(rcontains(self.mg_of(&v)?, Some(sign_of(x)?)))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.h == other.h {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if let (Repr::Generators(a), Repr::Generators(b)) = (&self.repr, &other.repr) {
            let mut gens = a.clone();
            gens.extend(b.iter().cloned());
            return Self::generated(self.h, gens);
        }
        Ok(Self::from_family(self.theta().sum(other.theta())?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_family(self.theta().intersect(other.theta())?))
    }

    /// `x ∈ supp(𝓜) = 𝓜 ∩ −𝓜`.
    pub fn supp_contains(&self, x: &Series) -> Result<bool> {
        match x.val()? {
            None => Ok(true),
            Some(v) if self.h.in_value_monoid(&v) => Ok(self.mg_of(&v)? == ResidueModule::All),
            Some(_) => Ok(false),
        }
    }

    /// Same Θ-family, i.e. same set.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.h == other.h && self.theta() == other.theta()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.theta().leq(other.theta())
    }

    fn at_identity(&self) -> ResidueModule {
        self.mg_of(&GroupElem::zero(self.dim())).expect("identity is in range")
    }

    pub fn is_whole_ring(&self) -> bool {
        self.at_identity() == ResidueModule::All
    }

    pub fn is_quadratic(&self) -> bool {
        rleq(ResidueModule::Pos, self.at_identity())
    }

    fn predicate_scope(&self) -> Result<()> {
        if self.h.is_whole_field() || (self.h.is_valuation_ring() && self.dim() == 1) {
            Ok(())
        } else {
            Err(Error::UnsupportedScope(
                "this predicate is only decided for A = K or A = F[[X]]".into(),
            ))
        }
    }

    /// Closed under products, for `A = K` or `A = F[[X]]`.
    pub fn is_preordering(&self) -> Result<bool> {
        self.predicate_scope()?;
        if !self.is_quadratic() {
            return Ok(false);
        }
        if self.h.is_valuation_ring() {
            return Ok(true);
        }
        let classes = SquareClass::all(self.dim());
        let at = |c: &SquareClass| self.mg_of(&c.representative()).expect("class in range");
        Ok(classes.iter().all(|a| {
            classes
                .iter()
                .all(|b| rleq(rproduct(at(a), at(b)), at(&a.combine(b))))
        }))
    }

    /// `𝓜 ∪ −𝓜 = A` with prime support, for `A = K` or `A = F[[X]]`.
    pub fn is_quasi_semiordering(&self) -> Result<bool> {
        self.predicate_scope()?;
        if self.is_whole_ring() {
            return Ok(false);
        }
        let fam = self.theta();
        // the only nonzero prime of F[[X]] is (X)
        let prime = fam.frontier().is_empty() || fam.frontier().prefix() == [1];
        // each representative is the least value of its class, and M_g grows along classes
        let no_gap = SquareClass::all(self.dim())
            .iter()
            .all(|c| fam.assign(&c.representative()).expect("in range") != ResidueModule::Zero);
        Ok(prime && no_gap)
    }

    /// Θ(𝓜).
    pub fn theta_of(&self) -> ThetaFamily {
        self.theta().clone()
    }

    /// Λ(fam).
    pub fn lambda_of(fam: ThetaFamily) -> Self {
        Self::from_family(fam)
    }

    /// A generator form of the same module, when Θ is finitely generated.
    pub fn realize(&self) -> Option<Self> {
        if let Repr::Generators(_) = self.repr {
            return Some(self.clone());
        }
        let gens = self.theta().realize()?;
        let series = gens
            .into_iter()
            .map(|(s, g)| {
                let c = match s {
                    Sign::Pos => 1,
                    Sign::Neg => -1,
                };
                Series::monomial(crate::coeff::rat(c, 1), g)
            })
            .collect();
        Self::generated(self.h, series).ok()
    }
}
