//! Random generators and brute-force oracles shared by the integration tests.
//! Nothing here calls into the module machinery of the library; the oracles
//! work from valuations, signs and parities only.
#![allow(dead_code)]

use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::Signed;
use quasiquad::coeff::{rat, Rat};
use quasiquad::group::{ConvexSubgroup, GroupElem};
use quasiquad::residue::Sign;
use quasiquad::series::Series;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Print past the test harness capture so the lines land in the log.
pub fn report(line: &str) {
    let mut err = std::io::stderr();
    let _ = writeln!(err, "{line}");
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

pub fn g(v: &[i64]) -> GroupElem {
    GroupElem::new(v.to_vec())
}

pub fn sign_coeff(s: Sign) -> i64 {
    match s {
        Sign::Pos => 1,
        Sign::Neg => -1,
    }
}

pub fn rand_sign(r: &mut TestRng) -> Sign {
    if r.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A positive rational with small numerator and denominator.
pub fn rand_pos_rat(r: &mut TestRng) -> Rat {
    rat(r.gen_range(1..=9), r.gen_range(1..=5))
}

pub fn rand_rat(r: &mut TestRng) -> Rat {
    let c = rand_pos_rat(r);
    if r.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// `(p₁ … p_j)`, the image in `G/H`.
pub fn head(v: &GroupElem, j: usize) -> Vec<i64> {
    v.coords()[..j].to_vec()
}

pub fn parity(v: &GroupElem) -> Vec<i64> {
    v.coords().iter().map(|c| c.rem_euclid(2)).collect()
}

/// `v ∈ H ∪ G_{≥e}` for `H = {first j coordinates zero}`.
pub fn in_values(v: &GroupElem, j: usize) -> bool {
    head(v, j) >= vec![0; j]
}

/// A random exponent in `H ∪ G_{≥e}` with coordinates in `[lo, hi]`.
pub fn rand_value(r: &mut TestRng, n: usize, j: usize, lo: i64, hi: i64) -> GroupElem {
    loop {
        let v = GroupElem::new((0..n).map(|_| r.gen_range(lo..=hi)).collect());
        if in_values(&v, j) {
            return v;
        }
    }
}

/// A strictly positive exponent with small coordinates.
pub fn rand_positive(r: &mut TestRng, n: usize) -> GroupElem {
    loop {
        let v = GroupElem::new((0..n).map(|_| r.gen_range(-2..=3)).collect());
        if v.is_positive() {
            return v;
        }
    }
}

/// `c·t^v·(1 + a few higher terms)`, exact.
pub fn rand_series_at(r: &mut TestRng, v: &GroupElem, c: Rat) -> Series {
    let n = v.dim();
    let mut terms = vec![(v.clone(), c)];
    for _ in 0..r.gen_range(0..=3) {
        let w = rand_positive(r, n);
        terms.push((v.try_add(&w).unwrap(), rand_rat(r)));
    }
    Series::new(n, terms, None).unwrap()
}

/// A nonzero exact polynomial in `t` whose valuation lies in `[0, max_order]`.
pub fn rand_power_series(r: &mut TestRng, max_order: i64) -> Series {
    let v = r.gen_range(0..=max_order);
    rand_any_at(r, &g(&[v]))
}

/// `rand_series_at` with a random leading coefficient.
pub fn rand_any_at(r: &mut TestRng, v: &GroupElem) -> Series {
    let c = rand_rat(r);
    rand_series_at(r, v, c)
}

/// A random exact element with valuation in `H ∪ G_{≥e}` and coordinates in `[lo, hi]`.
pub fn rand_element(r: &mut TestRng, n: usize, j: usize, lo: i64, hi: i64) -> Series {
    let v = rand_value(r, n, j, lo, hi);
    rand_any_at(r, &v)
}

pub fn lead_sign(x: &Series) -> Option<(GroupElem, Sign)> {
    let v = x.val().unwrap()?;
    let c = x.leading().unwrap().1;
    Some((v, if c.is_positive() { Sign::Pos } else { Sign::Neg }))
}

/// A generated module described by signs and valuations of its generators.
#[derive(Clone, Debug)]
pub struct GenModule {
    pub n: usize,
    pub j: usize,
    pub gens: Vec<(Sign, GroupElem)>,
    pub series: Vec<Series>,
}

impl GenModule {
    pub fn subgroup(&self) -> ConvexSubgroup {
        ConvexSubgroup::new(self.j, self.n).unwrap()
    }

    /// Membership by the closed rule for `Σ A²fᵢ`: a generator of the same
    /// sign and square class sits at or below `x` modulo `H`, or an opposite
    /// pair of one class does (then all of `t^m·A` is inside).
    pub fn oracle(&self, x: &Series) -> bool {
        let Some((vx, sx)) = lead_sign(x) else {
            return true;
        };
        if !in_values(&vx, self.j) {
            return false;
        }
        let j = self.j;
        let below = |v: &GroupElem| head(v, j) <= head(&vx, j);
        let direct = self
            .gens
            .iter()
            .any(|(s, v)| *s == sx && parity(v) == parity(&vx) && below(v));
        direct || self.flood_below(&vx)
    }

    pub fn flood_below(&self, vx: &GroupElem) -> bool {
        let j = self.j;
        self.gens.iter().any(|(sa, va)| {
            self.gens.iter().any(|(sb, vb)| {
                *sa == Sign::Pos
                    && *sb == Sign::Neg
                    && parity(va) == parity(vb)
                    && head(va.max(vb), j) <= head(vx, j)
            })
        })
    }
}

/// Random generators in `H ∪ G_{≥e}` with coordinates in `[lo, hi]`; with
/// `quadratic`, `1` is listed first.
pub fn rand_gen_module(r: &mut TestRng, n: usize, j: usize, count: usize, lo: i64, hi: i64, quadratic: bool) -> GenModule {
    let mut gens = Vec::new();
    let mut series = Vec::new();
    if quadratic {
        gens.push((Sign::Pos, GroupElem::zero(n)));
        series.push(Series::one(n));
    }
    for _ in 0..count {
        let v = rand_value(r, n, j, lo, hi);
        let s = rand_sign(r);
        let c = rand_pos_rat(r) * rat(sign_coeff(s), 1);
        series.push(rand_series_at(r, &v, c));
        gens.push((s, v));
    }
    GenModule { n, j, gens, series }
}

/// All integer vectors of length `n` with coordinates in `[-radius, radius]`.
pub fn grid(n: usize, radius: i64) -> Vec<GroupElem> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(GroupElem::new).collect()
}

/// Collect failures, keeping the first few messages.
#[derive(Default)]
pub struct Failures {
    pub count: usize,
    pub first: Vec<String>,
}

impl Failures {
    pub fn note(&mut self, msg: impl FnOnce() -> String) {
        self.count += 1;
        if self.first.len() < 3 {
            self.first.push(msg());
        }
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.note(msg);
        }
    }

    pub fn result(self) -> Result<(), String> {
        if self.count == 0 {
            Ok(())
        } else {
            Err(format!("{} failures, e.g. {}", self.count, self.first.join(" | ")))
        }
    }
}
