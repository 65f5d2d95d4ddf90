//! Exact arithmetic in iterated Laurent series: valuation, angular component,
//! inverse and square roots of strict units.

use quasiquad::angular::{an, sqrt_strict_unit, square_witness};
use quasiquad::group::GroupElem;
use quasiquad::parse::parse_series;
use quasiquad::series::{window_past, Series};

fn main() -> quasiquad::error::Result<()> {
    let f = parse_series("-3*t1^-1*t2 + (1/2)*t2^4 + t1", 2)?;
    let v = f.valuation()?;
    println!("f = {f}");
    println!("val f = {v}, an f = {}", an(&f)?.coeff);

    let inv = f.inverse(None)?;
    println!("1/f = {inv}");
    let through = window_past(&GroupElem::zero(2), 16);
    let one = &f * &inv;
    println!("f·(1/f) = 1 through {through}: {}", one.agrees_through(&Series::one(2), &through));

    let u = parse_series("1 + X", 1)?;
    let root = sqrt_strict_unit(&u, None)?;
    println!("sqrt(1 + X) = {root}");

    // 2 + X = 2·(1 + X/2): the positive rational is kept as a scale
    let x = parse_series("1", 1)?;
    let y = parse_series("2 + X", 1)?;
    if let Some(w) = square_witness(&x, &y, None)? {
        println!("2 + X = {} · ({})²", w.scale, w.unit);
    }
    Ok(())
}
