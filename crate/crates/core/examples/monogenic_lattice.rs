//! The lattice of monogenic quadratic modules of K as DOT, and a pythagorean root.

use quasiquad::field::{monogenic_lattice, pythagorean_root};
use quasiquad::parse::parse_series;

fn main() -> quasiquad::error::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let lattice = monogenic_lattice(n)?;
    print!("{}", lattice.to_dot());

    let f1 = parse_series("t1 + t2", 2)?;
    let f2 = parse_series("3*t1 - t2^2", 2)?;
    let w = pythagorean_root(&f1, &f2)?;
    eprintln!("({f1})² + ({f2})² = {} · ({})²", w.scale, w.unit);
    Ok(())
}
