//! Θ-families: the canonical coordinates `g ↦ M_g` of a quasi-quadratic module.
//!
//! `M_g` depends only on the square class `ḡ` and on the image `[g]` of `g`
//! in `G/H`, grows along each square class, and once it is all of `F` it stays
//! so on the whole coset and above. A family is therefore stored as, for each
//! square class `π`, the set of heads `[g]` where `F²` occurs and the set where
//! `−F²` occurs (both upward closed), together with the set of heads where the
//! value is `F` for every class.
//!
//! Stored cuts are canonical: each is the least cut with the same trace on the
//! heads that actually occur for its class, so equal families compare equal.

use serde::{Deserialize, Serialize};

use crate::cut::{Cut, CutSpec};
use crate::error::{Error, Result};
use crate::group::{square_class, ConvexSubgroup, GroupElem, SquareClass};
use crate::residue::{ResidueModule, Sign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThetaFamily {
    h: ConvexSubgroup,
    pos: Vec<Cut>,
    neg: Vec<Cut>,
    frontier: Cut,
}

/// One piece of a family: `module` on the class `parity` from the heads in `from` upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub parity: SquareClass,
    pub from: Cut,
    pub module: ResidueModule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatchSpec {
    /// The patch generated at `class`: its square class, from its head upward.
    Class {
        class: Vec<i64>,
        module: ResidueModule,
    },
    Cut {
        parity: Vec<u8>,
        from: CutSpec<i64>,
        module: ResidueModule,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub patches: Vec<PatchSpec>,
    pub frontier: CutSpec<i64>,
}

pub fn class_index(c: &SquareClass) -> usize {
    c.bits().iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn index_class(n: usize, i: usize) -> SquareClass {
    SquareClass::new((0..n).map(|k| ((i >> (n - 1 - k)) & 1) as u8).collect())
}

/// `{[g] : g ∈ H ∪ G_{≥e}}` as a cut in `G/H`.
fn value_heads(h: &ConvexSubgroup) -> Cut {
    Cut::at_least(&vec![0; h.index()])
}

impl ThetaFamily {
    fn classes(&self) -> usize {
        1 << self.h.dim()
    }

    fn head_parity(&self, i: usize) -> Vec<u8> {
        index_class(self.h.dim(), i).bits()[..self.h.index()].to_vec()
    }

    pub fn zero(h: ConvexSubgroup) -> Self {
        let j = h.index();
        let k = 1 << h.dim();
        ThetaFamily {
            h,
            pos: vec![Cut::empty(j); k],
            neg: vec![Cut::empty(j); k],
            frontier: Cut::empty(j),
        }
    }

    /// The family of the whole ring `A`.
    pub fn whole(h: ConvexSubgroup) -> Self {
        let mut fam = Self::zero(h);
        fam.frontier = value_heads(&h);
        fam.canonical()
    }

    /// Θ of `A²f` for `f` with sign `s` and valuation `g`.
    pub fn monogenic(h: ConvexSubgroup, s: Sign, g: &GroupElem) -> Result<Self> {
        h.check(g)?;
        if !h.in_value_monoid(g) {
            return Err(Error::NotInRing);
        }
        let mut fam = Self::zero(h);
        let i = class_index(&square_class(g));
        let from = Cut::at_least(h.project(g));
        match s {
            Sign::Pos => fam.pos[i] = from,
            Sign::Neg => fam.neg[i] = from,
        }
        Ok(fam.canonical())
    }

    /// Θ of the module generated by elements with the given signs and valuations.
    pub fn generated(h: ConvexSubgroup, gens: &[(Sign, GroupElem)]) -> Result<Self> {
        let mut fam = Self::zero(h);
        for (s, g) in gens {
            fam = fam.sum(&Self::monogenic(h, *s, g)?)?;
        }
        Ok(fam)
    }

    /// Build a family from patches and an explicit frontier, rejecting
    /// assignments that break the compatibility conditions.
    pub fn from_patches(h: ConvexSubgroup, patches: &[Patch], frontier: Cut) -> Result<Self> {
        let j = h.index();
        if frontier.dim() != j {
            return Err(Error::MalformedCut(format!("frontier must live in dimension {j}")));
        }
        let mut fam = Self::zero(h);
        for p in patches {
            if p.parity.dim() != h.dim() {
                return Err(Error::DimensionMismatch {
                    expected: h.dim(),
                    found: p.parity.dim(),
                });
            }
            if p.from.dim() != j {
                return Err(Error::MalformedCut(format!("patch cut must live in dimension {j}")));
            }
            let i = class_index(&p.parity);
            if matches!(p.module, ResidueModule::Pos | ResidueModule::All) {
                fam.pos[i] = fam.pos[i].union(&p.from);
            }
            if matches!(p.module, ResidueModule::Neg | ResidueModule::All) {
                fam.neg[i] = fam.neg[i].union(&p.from);
            }
        }
        fam.frontier = frontier;
        let implied = fam.implied();
        if !implied.is_subset(&fam.frontier) {
            return Err(Error::FamilyViolation(format!(
                "the value F is forced on {implied:?} but the frontier is only {:?}",
                fam.frontier
            )));
        }
        Ok(fam.canonical())
    }

    /// Where the patches alone already force the value `F`, closed upward in `G/H`.
    fn implied(&self) -> Cut {
        let vq = value_heads(&self.h);
        let mut out = Cut::empty(self.h.index());
        for i in 0..self.classes() {
            let both = self.pos[i].intersect(&self.neg[i]).intersect(&vq);
            out = out.union(&both.parity_hull(&self.head_parity(i)));
        }
        out
    }

    fn canonical(mut self) -> Self {
        let vq = value_heads(&self.h);
        self.frontier = self.frontier.intersect(&vq).union(&self.implied());
        for i in 0..self.classes() {
            let parity = self.head_parity(i);
            let fix = |c: &Cut| c.union(&self.frontier).intersect(&vq).parity_hull(&parity);
            self.pos[i] = fix(&self.pos[i]);
            self.neg[i] = fix(&self.neg[i]);
        }
        self
    }

    pub fn subgroup(&self) -> ConvexSubgroup {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// The heads `[g]` with `M_g = F`.
    pub fn frontier(&self) -> &Cut {
        &self.frontier
    }

    pub fn pos_cut(&self, parity: &SquareClass) -> &Cut {
        &self.pos[class_index(parity)]
    }

    pub fn neg_cut(&self, parity: &SquareClass) -> &Cut {
        &self.neg[class_index(parity)]
    }

    /// `M_g` for `g ∈ H ∪ G_{≥e}`.
    pub fn assign(&self, g: &GroupElem) -> Result<ResidueModule> {
        self.h.check(g)?;
        if !self.h.in_value_monoid(g) {
            return Err(Error::NotInRing);
        }
        let i = class_index(&square_class(g));
        let q = self.h.project(g);
        Ok(match (self.pos[i].contains(q), self.neg[i].contains(q)) {
            (false, false) => ResidueModule::Zero,
            (true, false) => ResidueModule::Pos,
            (false, true) => ResidueModule::Neg,
            (true, true) => ResidueModule::All,
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.h == other.h {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// Θ(𝓜 + 𝒩): pointwise join, then flood `F` upward from every point where it appears.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let zip = |a: &[Cut], b: &[Cut]| a.iter().zip(b).map(|(x, y)| x.union(y)).collect();
        Ok(ThetaFamily {
            h: self.h,
            pos: zip(&self.pos, &other.pos),
            neg: zip(&self.neg, &other.neg),
            frontier: self.frontier.union(&other.frontier),
        }
        .canonical())
    }

    /// Θ(𝓜 ∩ 𝒩): pointwise meet.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let zip = |a: &[Cut], b: &[Cut]| a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect();
        Ok(ThetaFamily {
            h: self.h,
            pos: zip(&self.pos, &other.pos),
            neg: zip(&self.neg, &other.neg),
            frontier: self.frontier.intersect(&other.frontier),
        }
        .canonical())
    }

    /// Pointwise `≤`, i.e. inclusion of the modules.
    pub fn leq(&self, other: &Self) -> bool {
        self.h == other.h
            && self.pos.iter().zip(&other.pos).all(|(a, b)| a.is_subset(b))
            && self.neg.iter().zip(&other.neg).all(|(a, b)| a.is_subset(b))
    }

    /// A canonical patch list: per class, the larger of the two cuts with its
    /// sign and the smaller one as an `All` patch.
    pub fn patches(&self) -> Vec<Patch> {
        let mut out = Vec::new();
        for i in 0..self.classes() {
            let parity = index_class(self.dim(), i);
            let (p, n) = (&self.pos[i], &self.neg[i]);
            let both = p.intersect(n);
            let (hi, module) = if p.is_subset(n) {
                (n, ResidueModule::Neg)
            } else {
                (p, ResidueModule::Pos)
            };
            if *hi != both {
                out.push(Patch {
                    parity: parity.clone(),
                    from: hi.clone(),
                    module,
                });
            }
            if !both.is_empty() {
                out.push(Patch {
                    parity,
                    from: both,
                    module: ResidueModule::All,
                });
            }
        }
        out
    }

    pub fn to_spec(&self) -> FamilySpec {
        let j = self.h.index();
        let patches = self
            .patches()
            .into_iter()
            .map(|p| match p.from.min_element() {
                Some(head) => {
                    let mut class = head.to_vec();
                    class.extend(p.parity.bits()[j..].iter().map(|&b| b as i64));
                    PatchSpec::Class {
                        class,
                        module: p.module,
                    }
                }
                None => PatchSpec::Cut {
                    parity: p.parity.bits().to_vec(),
                    from: p.from.to_spec(),
                    module: p.module,
                },
            })
            .collect();
        FamilySpec {
            patches,
            frontier: self.frontier.to_spec(),
        }
    }

    pub fn from_spec(h: ConvexSubgroup, spec: &FamilySpec) -> Result<Self> {
        let j = h.index();
        let patches = spec
            .patches
            .iter()
            .map(|p| match p {
                PatchSpec::Class { class, module } => {
                    let g = GroupElem::new(class.clone());
                    h.check(&g)?;
                    Ok(Patch {
                        parity: square_class(&g),
                        from: Cut::at_least(h.project(&g)),
                        module: *module,
                    })
                }
                PatchSpec::Cut {
                    parity,
                    from,
                    module,
                } => {
                    if parity.len() != h.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: h.dim(),
                            found: parity.len(),
                        });
                    }
                    Ok(Patch {
                        parity: SquareClass::new(parity.clone()),
                        from: Cut::from_spec(from, j)?,
                        module: *module,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_patches(h, &patches, Cut::from_spec(&spec.frontier, j)?)
    }

    /// Signs and valuations of monomials generating this family, when it is
    /// finitely generated.
    pub fn realize(&self) -> Option<Vec<(Sign, GroupElem)>> {
        let j = self.h.index();
        let mut gens = Vec::new();
        let point = |head: &[i64], parity: &SquareClass| {
            let mut c = head.to_vec();
            c.extend(parity.bits()[j..].iter().map(|&b| b as i64));
            GroupElem::new(c)
        };
        for i in 0..self.classes() {
            let parity = index_class(self.dim(), i);
            for (cut, s) in [(&self.pos[i], Sign::Pos), (&self.neg[i], Sign::Neg)] {
                if cut.is_empty() || cut.is_subset(&self.frontier) {
                    continue;
                }
                gens.push((s, point(cut.min_element()?, &parity)));
            }
        }
        if !self.frontier.is_empty() {
            let head = self.frontier.min_element()?;
            let parity = SquareClass::new(head.iter().map(|c| c.rem_euclid(2) as u8).chain(vec![0; self.dim() - j]).collect());
            let g = point(head, &parity);
            gens.push((Sign::Pos, g.clone()));
            gens.push((Sign::Neg, g));
        }
        Some(gens)
    }

    /// Every `(g, M_g)` with `g ∈ H ∪ G_{≥e}` and all coordinates in `[-radius, radius]`.
    pub fn table(&self, radius: i64) -> Vec<(GroupElem, ResidueModule)> {
        box_points(self.dim(), radius)
            .into_iter()
            .map(GroupElem::new)
            .filter(|g| self.h.in_value_monoid(g))
            .map(|g| {
                let m = self.assign(&g).expect("point in range");
                (g, m)
            })
            .collect()
    }
}

/// All integer vectors of length `n` with coordinates in `[-radius, radius]`.
pub fn box_points(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

impl std::fmt::Debug for ThetaFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Θ[H{} n={}](", self.h.index(), self.h.dim())?;
        for p in self.patches() {
            write!(f, "{:?}:{:?}↦{}, ", p.parity, p.from, p.module)?;
        }
        write!(f, "F on {:?})", self.frontier)
    }
}
