//! Quadratic modules of F[[X]]: monogenic normal forms, the five rows of the
//! classification, two-generator presentations and the l/c/r decomposition.

use quasiquad::parse::{parse_list, parse_series};
use quasiquad::powerseries::{
    classify, lcr_decompose, po_monogenic, power_series_ring, presentation_text, PSQuadClass,
};
use quasiquad::qq::QQModule;
use quasiquad::residue::Sign;

fn main() -> quasiquad::error::Result<()> {
    for f in ["4 + X", "X^2 - X^3", "-X^3 + 5*X^4", "-7"] {
        let form = po_monogenic(&parse_series(f, 1)?)?;
        println!("PO({f}) = {}", form.normal);
    }

    let q = QQModule::quadratic(power_series_ring(), parse_list("X^3; -X^6", 1)?)?;
    let cls = classify(&q)?;
    println!("class {}: {}", cls.tag(), cls.to_json());
    println!("presentation {:?}", presentation_text(&cls)?);
    let lcr = lcr_decompose(&q)?;
    println!("Q_l = {}, Q_c = {}, Q_r = {}", lcr.l, lcr.c, lcr.r);

    let row = PSQuadClass::E { m: 3, n: 6, sign: Sign::Pos };
    let line: Vec<String> = (0..10).map(|k| row.row(k).to_string()).collect();
    println!("row e(3, 6, +): {}", line.join(" "));
    Ok(())
}
