//! The residue module attached to each index, and the family read back as patches.

use quasiquad::group::{ConvexSubgroup, GroupElem};
use quasiquad::parse::parse_list;
use quasiquad::qq::QQModule;

fn main() -> quasiquad::error::Result<()> {
    let b = ConvexSubgroup::valuation_ring(2)?;
    let m = QQModule::quadratic(b, parse_list("t1*t2; -t2^3", 2)?)?;
    let fam = m.theta_of();

    for (g, r) in fam.table(2) {
        println!("{g}\t{r}");
    }
    println!("at (1,1): {}", m.mg_of(&GroupElem::from_ints(&[1, 1]))?);

    for p in fam.patches() {
        println!("{p:?}");
    }
    let rebuilt = QQModule::from_family(fam);
    println!("rebuilt from its family: {}", rebuilt.equivalent(&m));
    if let Some(real) = rebuilt.realize() {
        println!("monomial generators: {:?}", real.generators().map(|g| g.iter().map(|f| f.to_string()).collect::<Vec<_>>()));
    }
    Ok(())
}
