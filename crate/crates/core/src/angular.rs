//! The monomial cross-section `ω(g) = tᵍ`, the angular component it induces,
//! and square roots of strict units.

use num_traits::{One, Signed};

use crate::coeff::{Coefficient, Rat};
use crate::error::{Error, Result};
use crate::group::{Coord, GroupElem};
use crate::residue::Sign;
use crate::series::{window_past, Series, DEFAULT_WINDOW};

/// Iteration cap for Newton's method; far above what any window needs.
const NEWTON_CAP: usize = 64;

pub fn cross_section<K: Coefficient, C: Coord>(g: &GroupElem<C>) -> Series<K, C> {
    Series::monomial(K::one(), g.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngularValue<K: Coefficient> {
    pub coeff: K,
}

impl AngularValue<Rat> {
    pub fn sign(&self) -> Sign {
        if self.coeff.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// `an(f)`: the coefficient at the valuation, i.e. `π(f·ω(val f)⁻¹)`.
pub fn an<K: Coefficient, C: Coord>(f: &Series<K, C>) -> Result<AngularValue<K>> {
    Ok(AngularValue {
        coeff: f.leading()?.1,
    })
}

pub fn sign_of<C: Coord>(f: &Series<Rat, C>) -> Result<Sign> {
    Ok(an(f)?.sign())
}

/// `val f = e` and `an f = 1`.
pub fn is_strict_unit<K: Coefficient, C: Coord>(f: &Series<K, C>) -> Result<bool> {
    let (g, c) = f.leading()?;
    Ok(g.is_zero() && c.is_one())
}

fn unit_target<C: Coord>(n: usize, target: Option<&GroupElem<C>>) -> GroupElem<C> {
    target
        .cloned()
        .unwrap_or_else(|| window_past(&GroupElem::zero(n), DEFAULT_WINDOW))
}

/// `√f` in characteristic two: halve every exponent.
pub fn frobenius_root<K: Coefficient, C: Coord>(f: &Series<K, C>) -> Result<Series<K, C>> {
    if K::CHARACTERISTIC != 2 {
        return Err(Error::UnsupportedScope("Frobenius root needs characteristic 2".into()));
    }
    let halve = |g: &GroupElem<C>| {
        g.half()
            .ok_or_else(|| Error::UnsupportedScope("exponent cannot be halved".into()))
    };
    let terms = f
        .terms()
        .map(|(g, c)| {
            let r = c.sqrt_exact().ok_or(Error::NotStrictUnit)?;
            Ok((halve(g)?, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let prec = f.prec().map(&halve).transpose()?;
    Series::new(f.dim(), terms, prec)
}

/// The square root of a strict unit through `target`, itself a strict unit.
pub fn sqrt_strict_unit<K: Coefficient, C: Coord>(
    f: &Series<K, C>,
    target: Option<&GroupElem<C>>,
) -> Result<Series<K, C>> {
    if !is_strict_unit(f)? {
        return Err(Error::NotStrictUnit);
    }
    let target = unit_target(f.dim(), target);
    if K::CHARACTERISTIC == 2 {
        return Ok(frobenius_root(f)?.truncate(&target));
    }
    if f.is_one() {
        return Ok(Series::one(f.dim()));
    }
    let half = K::from_i64(2).inv().ok_or(Error::UnsupportedScope("2 is not invertible".into()))?;
    let f = f.truncate(&target);
    let mut y = Series::one(f.dim()).truncate(&target);
    for _ in 0..NEWTON_CAP {
        let q = f.try_mul(&y.inverse(Some(&target))?)?;
        let next = y.try_add(&q)?.scale(&half).truncate(&target);
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    Err(Error::PrecisionIndeterminate)
}

/// `y = scale · x · unit²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness<C: Coord = i64> {
    pub scale: Rat,
    pub unit: Series<Rat, C>,
}

/// Find `u` with `y = c·x·u²` for a positive rational `c`, which is `1`
/// whenever the ratio of angular components is a rational square.
///
/// Succeeds exactly when `val y − val x ∈ 2G` and the angular components share
/// a sign.
pub fn square_witness<C: Coord>(
    x: &Series<Rat, C>,
    y: &Series<Rat, C>,
    target: Option<&GroupElem<C>>,
) -> Result<Option<SquareWitness<C>>> {
    let (vx, cx) = x.leading()?;
    let (vy, cy) = y.leading()?;
    let Some(h) = (&vy - &vx).half() else {
        return Ok(None);
    };
    let ratio = cy.clone() / cx;
    if !ratio.is_positive() {
        return Ok(None);
    }
    if x == y {
        return Ok(Some(SquareWitness {
            scale: Rat::one(),
            unit: Series::one(x.dim()),
        }));
    }
    let target = match target {
        Some(t) => t.clone(),
        None => window_past(&vy, DEFAULT_WINDOW),
    };
    let relative = &target - &vy;
    let q = y.try_div(x, Some(&(&target - &vx)))?;
    // q = ratio · t^{2h} · w with w a strict unit
    let w = q
        .shift(&-&h.double())
        .scale(&Rat::one().div(&ratio).expect("nonzero"));
    let s = sqrt_strict_unit(&w, Some(&relative))?;
    let (scale, root) = match ratio.sqrt_exact() {
        Some(r) => (Rat::one(), r),
        None => (ratio, Rat::one()),
    };
    Ok(Some(SquareWitness {
        scale,
        unit: s.shift(&h).scale(&root),
    }))
}

impl<C: Coord> SquareWitness<C> {
    /// Check `y = scale·x·unit²` through `target`.
    pub fn verify(&self, x: &Series<Rat, C>, y: &Series<Rat, C>, target: &GroupElem<C>) -> bool {
        let rhs = (x * &(&self.unit * &self.unit)).scale(&self.scale);
        rhs.agrees_through(y, target)
    }
}
