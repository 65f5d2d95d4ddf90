//! Modules, families and characteristic two modules as JSON.

use quasiquad::char2::c2_classify;
use quasiquad::group::ConvexSubgroup;
use quasiquad::json::{char2_from_str, module_from_str, module_to_value, Char2Json};
use quasiquad::parse::{parse_char2_list, parse_list};
use quasiquad::qq::QQModule;

fn main() -> quasiquad::error::Result<()> {
    let m = module_from_str(r#"{"H": 2, "n": 2, "repr": {"generators": ["t1*t2", "-t2^3"]}}"#, 2)?;
    let as_gens = serde_json::to_string(&module_to_value(&m)).expect("json");
    println!("{as_gens}");

    let fam = QQModule::from_family(m.theta_of());
    let as_family = serde_json::to_string_pretty(&module_to_value(&fam)).expect("json");
    println!("{as_family}");
    println!("same module: {}", module_from_str(&as_family, 2)?.equivalent(&m));

    let q = QQModule::quadratic(ConvexSubgroup::valuation_ring(2)?, parse_list("t1*t2; -t2^3", 2)?)?;
    println!("matches the literal build: {}", q.equivalent(&m));

    let h = ConvexSubgroup::new(1, 2)?;
    let c = c2_classify(h, &parse_char2_list("t1*t2^(1/2)", 2)?)?;
    let text = serde_json::to_string(&Char2Json::from_module(&c)).expect("json");
    println!("{text}");
    println!("read back: {}", char2_from_str(&text, 2)? == c);
    Ok(())
}
