//! Membership in a quasi-quadratic module, with an explicit sum of squares.

use quasiquad::group::ConvexSubgroup;
use quasiquad::parse::{parse_list, parse_series};
use quasiquad::qq::{certify, QQModule};

fn main() -> quasiquad::error::Result<()> {
    let b = ConvexSubgroup::valuation_ring(1)?;
    let gens = parse_list("1; X^3", 1)?;
    let m = QQModule::generated(b, gens.clone())?;

    for text in ["X^4 + X^5", "7*X^5 - X^6", "-X^4", "X^-2"] {
        let x = parse_series(text, 1)?;
        let member = m.contains(&x)?;
        println!("{text}: {member}");
        if let Some(cert) = certify(&b, &gens, &x)? {
            for (i, u) in &cert.terms {
                println!("    + ({}) · ({u})²", gens[*i]);
            }
            println!("    checked through {}: {}", cert.through, cert.verify(&b, &gens, &x));
        }
    }

    // opposite signs in one square class flood everything above
    let h1 = ConvexSubgroup::new(1, 2)?;
    let gens = parse_list("t1*t2; -3*t1*t2^3", 2)?;
    let x = parse_series("-t1^2*t2^-9", 2)?;
    let cert = certify(&h1, &gens, &x)?.expect("member");
    println!("{x}: {} terms, verified {}", cert.terms.len(), cert.verify(&h1, &gens, &x));
    Ok(())
}
