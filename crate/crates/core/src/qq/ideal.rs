use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::group::{mixed_class, ConvexSubgroup, GroupElem, MixedClass};
use crate::series::{ring_membership, Series};

/// `S(I) = {[[val x]] : x ∈ I∖{0}}`, stored as the cut of heads it covers:
/// a class `[[g]]` belongs to `S(I)` exactly when `[g]` lies in `threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealClasses {
    pub h: ConvexSubgroup,
    pub threshold: Cut,
}

/// Decompose the ideal generated by `gens` into `Φ(F, [[g]])` pieces.
pub fn ideal_decompose(h: ConvexSubgroup, gens: &[Series]) -> Result<IdealClasses> {
    let mut threshold = Cut::empty(h.index());
    for f in gens {
        h.check(&GroupElem::<i64>::zero(f.dim()))?;
        if !ring_membership(f, &h)? {
            return Err(Error::NotInRing);
        }
        let v = f.valuation()?;
        threshold = threshold.union(&Cut::at_least(h.project(&v)));
    }
    Ok(IdealClasses { h, threshold })
}

impl IdealClasses {
    pub fn contains_class(&self, c: &MixedClass) -> bool {
        self.threshold.contains(&c.head)
    }

    pub fn contains(&self, x: &Series) -> Result<bool> {
        Ok(match x.val()? {
            None => true,
            Some(v) => {
                self.h.in_value_monoid(&v) && self.contains_class(&mixed_class(&v, &self.h))
            }
        })
    }

    /// The classes in `S(I)` with head coordinates in `[-radius, radius]`.
    pub fn classes(&self, radius: i64) -> Vec<MixedClass> {
        let j = self.h.index();
        let tails = crate::qq::theta::box_points(self.h.dim() - j, 1)
            .into_iter()
            .filter(|t| t.iter().all(|&c| c >= 0))
            .collect::<Vec<_>>();
        let mut out = Vec::new();
        for head in crate::qq::theta::box_points(j, radius) {
            if !self.threshold.contains(&head) {
                continue;
            }
            for t in &tails {
                out.push(MixedClass {
                    head: head.clone(),
                    tail_parity: t.iter().map(|&c| c as u8).collect(),
                });
            }
        }
        out
    }
}
