//! Quadratic, preordering and semiordering tests, and the ideal classes of a
//! finitely generated ideal.

use quasiquad::group::ConvexSubgroup;
use quasiquad::parse::{parse_list, parse_series};
use quasiquad::qq::{ideal_decompose, QQModule};

fn main() -> quasiquad::error::Result<()> {
    let b = ConvexSubgroup::valuation_ring(1)?;
    for gens in ["X", "X; -X", "-1", "X^2; -X^3"] {
        let m = QQModule::quadratic(b, parse_list(gens, 1)?)?;
        println!(
            "gen{{{gens}}}: whole {} preordering {} quasi-semiordering {}",
            m.is_whole_ring(),
            m.is_preordering()?,
            m.is_quasi_semiordering()?
        );
    }

    let h1 = ConvexSubgroup::new(1, 2)?;
    let ideal = ideal_decompose(h1, &parse_list("t1*t2^5; t1^3", 2)?)?;
    for x in ["t1*t2^-40", "t2^3", "t1^2"] {
        println!("{x} in the ideal: {}", ideal.contains(&parse_series(x, 2)?)?);
    }
    Ok(())
}
