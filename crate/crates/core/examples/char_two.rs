//! Characteristic two: sums of two squares and modules described by cuts.

use quasiquad::char2::{c2_classify, c2_contains, c2_intersect, c2_sum, two_square_decompose};
use quasiquad::group::ConvexSubgroup;
use quasiquad::parse::{parse_char2, parse_char2_list};

fn main() -> quasiquad::error::Result<()> {
    let x = parse_char2("X^-3 + X", 1)?;
    let (u, v) = two_square_decompose(&x)?;
    println!("{x} = ({u})² + ({v})²");

    let h = ConvexSubgroup::new(1, 2)?;
    let a = c2_classify(h, &parse_char2_list("t1*t2^(1/2)", 2)?)?;
    let b = c2_classify(h, &parse_char2_list("t1^(1/2)", 2)?)?;
    println!("A = {:?}", a.to_kind());
    println!("B = {:?}", b.to_kind());
    println!("A + B = {:?}", c2_sum(&a, &b)?.to_kind());
    println!("A ∩ B = {:?}", c2_intersect(&a, &b)?.to_kind());
    for t in ["t1", "t1^(1/4)", "t2^9"] {
        println!("{t} in A: {}", c2_contains(&a, &parse_char2(t, 2)?)?);
    }
    Ok(())
}
