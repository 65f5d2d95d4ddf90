//! Explicit representations `x = Σ fᵢ uᵢ²` for members of a generated module.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::angular::{sign_of, square_witness};
use crate::coeff::Rat;
use crate::error::{Error, Result};
use crate::group::{square_class, ConvexSubgroup, GroupElem};
use crate::residue::Sign;
use crate::series::{ring_membership, window_past, Series, DEFAULT_WINDOW};

/// `x = Σ gens[i]·u²` over the listed `(i, u)`, checked below `through`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<(usize, Series)>,
    pub through: GroupElem,
}

impl Certificate {
    /// Recompute the sum with exact arithmetic and compare with `x`; every
    /// `u` must lie in `A`.
    pub fn verify(&self, h: &ConvexSubgroup, gens: &[Series], x: &Series) -> bool {
        let mut total = Series::zero(x.dim());
        for (i, u) in &self.terms {
            let Some(f) = gens.get(*i) else {
                return false;
            };
            if !ring_membership(u, h).unwrap_or(false) {
                return false;
            }
            total = &total + &(f * &(u * u));
        }
        total.agrees_through(x, &self.through)
    }
}

/// `n = a² + b² + c² + d²` for `n ≥ 0`.
pub fn four_squares(n: u64) -> [u64; 4] {
    let root = |m: u64| {
        let r = (m as f64).sqrt() as u64;
        (r.saturating_sub(1)..=r + 1).rev().find(|s| s * s <= m).unwrap_or(0)
    };
    let is_square = |m: u64| {
        let r = root(m);
        (r * r == m).then_some(r)
    };
    for a in (0..=root(n)).rev() {
        let ra = n - a * a;
        for b in (0..=root(ra).min(a)).rev() {
            let rb = ra - b * b;
            for c in (0..=root(rb).min(b)).rev() {
                if let Some(d) = is_square(rb - c * c) {
                    return [a, b, c, d];
                }
            }
        }
    }
    unreachable!("every natural number is a sum of four squares")
}

/// Rationals `a_k` with `Σ a_k² = c` for a positive rational `c`.
fn rational_squares(c: &Rat) -> Result<Vec<Rat>> {
    if c.is_one() {
        return Ok(vec![Rat::one()]);
    }
    let (p, q) = (c.numer(), c.denom());
    let pq = (p * q)
        .to_u64()
        .filter(|v| *v < 1 << 50)
        .ok_or_else(|| Error::UnsupportedScope("coefficient ratio too large for a four-square split".into()))?;
    Ok(four_squares(pq)
        .into_iter()
        .filter(|&a| a != 0)
        .map(|a| Rat::new(BigInt::from(a), q.clone()))
        .collect())
}

/// `x = c·f·u²` with `c` split into four squares, as terms on `f`.
fn direct(i: usize, f: &Series, x: &Series, target: &GroupElem) -> Result<Option<Vec<(usize, Series)>>> {
    let Some(w) = square_witness(f, x, Some(target))? else {
        return Ok(None);
    };
    Ok(Some(
        rational_squares(&w.scale)?
            .into_iter()
            .map(|a| (i, w.unit.scale(&a)))
            .collect(),
    ))
}

/// Build a representation of `x` in the quasi-quadratic module generated by
/// `gens`, or `None` when `x` is not a member.
pub fn certify(h: &ConvexSubgroup, gens: &[Series], x: &Series) -> Result<Option<Certificate>> {
    let Some(vx) = x.val()? else {
        return Ok(Some(Certificate {
            terms: Vec::new(),
            through: window_past(&GroupElem::zero(x.dim()), DEFAULT_WINDOW),
        }));
    };
    if !h.in_value_monoid(&vx) {
        return Ok(None);
    }
    let mut target = window_past(&vx, DEFAULT_WINDOW);
    if let Some(p) = x.prec() {
        target = target.min(p.clone());
    }
    let sx = sign_of(x)?;
    let cx = square_class(&vx);
    let q = |g: &GroupElem| h.project(g).to_vec();
    let info: Vec<_> = gens
        .iter()
        .map(|f| Ok((f.valuation()?, sign_of(f)?)))
        .collect::<Result<_>>()?;

    for (i, (v, s)) in info.iter().enumerate() {
        if *s == sx && square_class(v) == cx && q(v) <= q(&vx) {
            if let Some(terms) = direct(i, &gens[i], x, &target)? {
                return Ok(Some(finish(terms, gens, target)));
            }
        }
    }

    // flood: ±t^m both in the module for an opposite pair of one square class
    let mut best: Option<(GroupElem, usize, usize)> = None;
    for (a, (va, sa)) in info.iter().enumerate() {
        for (b, (vb, sb)) in info.iter().enumerate() {
            if *sa == Sign::Neg || *sb == Sign::Pos || square_class(va) != square_class(vb) {
                continue;
            }
            let m = va.clone().max(vb.clone());
            if q(&m) <= q(&vx) && best.as_ref().is_none_or(|(bm, _, _)| q(&m) < q(bm)) {
                best = Some((m, a, b));
            }
        }
    }
    let Some((m, a, b)) = best else {
        return Ok(None);
    };
    let n = x.dim();
    // move t^m up to the level of x when the square classes allow it; across
    // levels only a finite stretch past t^m can be certified
    let parity_gap: Vec<i64> = vx.coords().iter().zip(m.coords()).map(|(a, b)| (a - b).rem_euclid(2)).collect();
    let same_level = parity_gap[..n - 1].iter().all(|&d| d == 0);
    let m = if same_level {
        let mut c = vx.coords().to_vec();
        c[n - 1] -= parity_gap[n - 1];
        GroupElem::new(c)
    } else {
        m
    };
    let r = x.shift(&-&m);
    let vr = r.valuation()?;
    let low = vr.clone().min(GroupElem::zero(n));
    if !same_level {
        target = target.min(window_past(&(&m + &low.double()), DEFAULT_WINDOW));
    }
    // the squares of (r ± 1)/2 may reach down to 2·min(0, val r)
    let rho = &(&target - &m) - &low.double();
    let inner = &m + &rho;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let one = Series::one(n);
    let up = (&r + &one).scale(&half);
    let down = (&r - &one).scale(&half);
    let tm = Series::monomial(Rat::one(), m.clone());
    let mut terms = Vec::new();
    for (idx, mono, u) in [(a, tm.clone(), up), (b, -&tm, down)] {
        if u.val()?.is_none() {
            continue;
        }
        let Some(base) = direct(idx, &gens[idx], &mono, &inner)? else {
            return Err(Error::FamilyViolation("flood pair does not reach t^m".into()));
        };
        terms.extend(base.into_iter().map(|(i, s)| (i, &s * &u)));
    }
    Ok(Some(finish(terms, gens, target)))
}

/// Cap `through` at what the generator precisions actually determine.
fn finish(terms: Vec<(usize, Series)>, gens: &[Series], target: GroupElem) -> Certificate {
    let mut through = target;
    for (i, u) in &terms {
        let prod = &gens[*i] * &(u * u);
        if let Some(p) = prod.prec() {
            through = through.min(p.clone());
        }
    }
    Certificate { terms, through }
}
