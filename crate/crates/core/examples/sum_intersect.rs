//! Sums and intersections computed pointwise on residue modules.

use quasiquad::group::{ConvexSubgroup, GroupElem};
use quasiquad::parse::{parse_list, parse_series};
use quasiquad::qq::QQModule;

fn main() -> quasiquad::error::Result<()> {
    let b = ConvexSubgroup::valuation_ring(1)?;
    let m = QQModule::quadratic(b, parse_list("X^3", 1)?)?;
    let n = QQModule::quadratic(b, parse_list("-X^5", 1)?)?;
    let sum = m.sum(&n)?;
    let meet = m.intersect(&n)?;

    println!("k\tM\tN\tM+N\tM∩N");
    for k in 0..8 {
        let g = GroupElem::from_ints(&[k]);
        println!("{k}\t{}\t{}\t{}\t{}", m.mg_of(&g)?, n.mg_of(&g)?, sum.mg_of(&g)?, meet.mg_of(&g)?);
    }
    // X^3 and -X^5 share a square class, so that class floods from X^5 on
    let x = parse_series("-X^7 + X^8", 1)?;
    println!("{x} in M+N: {}", sum.contains(&x)?);
    println!("support of M+N contains X^5: {}", sum.supp_contains(&parse_series("X^5", 1)?)?);
    Ok(())
}
