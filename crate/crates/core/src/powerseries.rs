//! Quadratic modules of `F[[X]]`: monogenic normal forms, the five-way
//! classification, two-generator presentations and the `Q_l ∪ Q_c ∪ Q_r` split.

use std::fmt;

use serde_json::{json, Value};

use crate::angular::sign_of;
use crate::coeff::rat;
use crate::error::{Error, Result};
use crate::group::{ConvexSubgroup, GroupElem, SquareClass};
use crate::qq::QQModule;
use crate::residue::{ResidueModule, Sign};
use crate::series::Series;

pub fn power_series_ring() -> ConvexSubgroup {
    ConvexSubgroup::valuation_ring(1).expect("dimension 1 is always allowed")
}

/// `PO(1)` or `PO(±X^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monogenic {
    One,
    Term { sign: Sign, exp: u32 },
}

impl Monogenic {
    pub fn term(sign: Sign, exp: u32) -> Self {
        Monogenic::Term { sign, exp }
    }

    pub fn generator(&self) -> Series {
        match *self {
            Monogenic::One => Series::one(1),
            Monogenic::Term { sign, exp } => {
                let c = if sign == Sign::Pos { 1 } else { -1 };
                Series::monomial(rat(c, 1), GroupElem::from_ints(&[exp as i64]))
            }
        }
    }

    pub fn module(&self) -> QQModule {
        QQModule::quadratic(power_series_ring(), vec![self.generator()]).expect("monomials lie in F[[X]]")
    }
}

fn monomial_text(sign: Sign, exp: u32) -> String {
    let s = if sign == Sign::Neg { "-" } else { "" };
    match exp {
        0 => format!("{s}1"),
        1 => format!("{s}X"),
        k => format!("{s}X^{k}"),
    }
}

impl fmt::Display for Monogenic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Monogenic::One => write!(f, "PO(1)"),
            Monogenic::Term { sign, exp } => write!(f, "PO({})", monomial_text(sign, exp)),
        }
    }
}

/// `PO(f)` together with its normal form.
#[derive(Clone, Debug)]
pub struct MonogenicForm {
    pub module: QQModule,
    pub normal: Monogenic,
}

pub fn po_monogenic(f: &Series) -> Result<MonogenicForm> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    let v = f.val()?.ok_or(Error::ZeroInput)?;
    let k = v.coords()[0];
    if k < 0 {
        return Err(Error::NotInRing);
    }
    let eps = sign_of(f)?;
    let normal = if k % 2 == 0 && eps == Sign::Pos {
        Monogenic::One
    } else {
        Monogenic::term(eps, k as u32)
    };
    Ok(MonogenicForm {
        module: QQModule::quadratic(power_series_ring(), vec![f.clone()])?,
        normal,
    })
}

/// The rows (a)–(e) of the classification of quadratic modules in `F[[X]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PSQuadClass {
    /// `PO(1)`.
    A,
    /// The whole ring.
    B,
    /// `±F²` on odd `k ≥ n`, `n` odd.
    C { n: u32, sign: Sign },
    /// `F` from `n` on.
    D { n: u32 },
    /// `±F²` on odd `m ≤ k < n` and `F` from `n` on, `m` odd.
    E { m: u32, n: u32, sign: Sign },
}

impl PSQuadClass {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::FamilyViolation(msg.into()));
        match *self {
            PSQuadClass::C { n, .. } if n % 2 == 0 => bad("case (c) needs an odd n"),
            PSQuadClass::D { n: 0 } => bad("case (d) needs a positive n"),
            PSQuadClass::E { m, n, .. } if m % 2 == 0 || m >= n => bad("case (e) needs an odd m below n"),
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> char {
        match self {
            PSQuadClass::A => 'a',
            PSQuadClass::B => 'b',
            PSQuadClass::C { .. } => 'c',
            PSQuadClass::D { .. } => 'd',
            PSQuadClass::E { .. } => 'e',
        }
    }

    /// `M_k(Q)` read off the row.
    pub fn row(&self, k: u32) -> ResidueModule {
        use ResidueModule::*;
        let even = k.is_multiple_of(2);
        let signed = |s: Sign| if s == Sign::Pos { Pos } else { Neg };
        match *self {
            PSQuadClass::A => if even { Pos } else { Zero },
            PSQuadClass::B => All,
            PSQuadClass::C { n, sign } => match (even, k >= n) {
                (true, _) => Pos,
                (false, true) => signed(sign),
                (false, false) => Zero,
            },
            PSQuadClass::D { n } if k >= n => All,
            PSQuadClass::D { .. } => if even { Pos } else { Zero },
            PSQuadClass::E { n, .. } if k >= n => All,
            PSQuadClass::E { m, sign, .. } => match (even, k >= m) {
                (true, _) => Pos,
                (false, true) => signed(sign),
                (false, false) => Zero,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let sign = |s: Sign| s.symbol().to_string();
        match *self {
            PSQuadClass::A | PSQuadClass::B => json!({ "case": self.tag().to_string() }),
            PSQuadClass::C { n, sign: s } => json!({ "case": "c", "n": n, "sign": sign(s) }),
            PSQuadClass::D { n } => json!({ "case": "d", "n": n }),
            PSQuadClass::E { m, n, sign: s } => json!({ "case": "e", "m": m, "n": n, "sign": sign(s) }),
        }
    }
}

impl fmt::Display for PSQuadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PSQuadClass::A | PSQuadClass::B => write!(f, "({})", self.tag()),
            PSQuadClass::C { n, sign } => write!(f, "(c) n={n} sign={sign}"),
            PSQuadClass::D { n } => write!(f, "(d) n={n}"),
            PSQuadClass::E { m, n, sign } => write!(f, "(e) m={m} n={n} sign={sign}"),
        }
    }
}

fn check_power_series(q: &QQModule) -> Result<()> {
    if q.subgroup() != power_series_ring() {
        return Err(Error::UnsupportedScope("classification is for F[[X]] only".into()));
    }
    if !q.is_quadratic() {
        return Err(Error::NotQuadratic);
    }
    Ok(())
}

fn start(cut: &crate::cut::Cut) -> Option<u32> {
    cut.min_element().map(|p| p[0] as u32)
}

/// Read the row of a quadratic module of `F[[X]]` off its Θ-family.
pub fn classify(q: &QQModule) -> Result<PSQuadClass> {
    check_power_series(q)?;
    if q.is_whole_ring() {
        return Ok(PSQuadClass::B);
    }
    let fam = q.theta();
    let odd = SquareClass::new(vec![1]);
    let frontier = start(fam.frontier());
    let below = |s: Option<u32>| s.filter(|&k| frontier.is_none_or(|f| k < f));
    let signed = match (below(start(fam.pos_cut(&odd))), below(start(fam.neg_cut(&odd)))) {
        (Some(m), None) => Some((m, Sign::Pos)),
        (None, Some(m)) => Some((m, Sign::Neg)),
        (None, None) => None,
        (Some(_), Some(_)) => return Err(Error::FamilyViolation("both signs below the frontier".into())),
    };
    Ok(match (frontier, signed) {
        (None, None) => PSQuadClass::A,
        (None, Some((n, sign))) => PSQuadClass::C { n, sign },
        (Some(n), None) => PSQuadClass::D { n },
        (Some(n), Some((m, sign))) => PSQuadClass::E { m, n, sign },
    })
}

/// Monogenic summands whose sum is the class.
pub fn two_generator_presentation(cls: &PSQuadClass) -> Result<Vec<Monogenic>> {
    cls.validate()?;
    use Sign::*;
    Ok(match *cls {
        PSQuadClass::A => vec![Monogenic::One],
        PSQuadClass::B => vec![Monogenic::term(Neg, 0)],
        PSQuadClass::C { n, sign } => vec![Monogenic::term(sign, n)],
        PSQuadClass::D { n } if n % 2 == 0 => vec![Monogenic::term(Neg, n)],
        PSQuadClass::D { n } => vec![Monogenic::term(Pos, n), Monogenic::term(Neg, n)],
        PSQuadClass::E { m, n, sign } if n % 2 == 0 => {
            vec![Monogenic::term(sign, m), Monogenic::term(Neg, n)]
        }
        PSQuadClass::E { m, n, sign } => vec![Monogenic::term(sign, m), Monogenic::term(sign.flip(), n)],
    })
}

/// The presentation as generator series and as a module.
pub fn presentation_module(cls: &PSQuadClass) -> Result<QQModule> {
    let gens = two_generator_presentation(cls)?
        .iter()
        .map(Monogenic::generator)
        .collect();
    QQModule::quadratic(power_series_ring(), gens)
}

pub fn presentation_text(cls: &PSQuadClass) -> Result<Vec<String>> {
    Ok(two_generator_presentation(cls)?
        .into_iter()
        .map(|m| match m {
            Monogenic::One => "1".to_string(),
            Monogenic::Term { sign, exp } => monomial_text(sign, exp),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LCRTriple {
    pub l: Monogenic,
    pub c: Monogenic,
    pub r: Monogenic,
}

impl LCRTriple {
    pub fn parts(&self) -> [QQModule; 3] {
        [self.l.module(), self.c.module(), self.r.module()]
    }

    /// Membership in `Q_l ∪ Q_c ∪ Q_r`.
    pub fn union_contains(&self, x: &Series) -> Result<bool> {
        for part in self.parts() {
            if part.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l.to_string(),
            "c": self.c.to_string(),
            "r": self.r.to_string(),
        })
    }
}

/// `Q_l`, `Q_c`, `Q_r` from the least exponents with `X^k` resp. `−X^k` in `Q`.
pub fn lcr_decompose(q: &QQModule) -> Result<LCRTriple> {
    check_power_series(q)?;
    let fam = q.theta();
    let least = |sign: Sign, parity: u8| {
        let class = SquareClass::new(vec![parity]);
        let cut = match sign {
            Sign::Pos => fam.pos_cut(&class),
            Sign::Neg => fam.neg_cut(&class),
        };
        start(cut).map_or(Monogenic::One, |k| Monogenic::term(sign, k))
    };
    Ok(LCRTriple {
        l: least(Sign::Pos, 1),
        c: least(Sign::Neg, 0),
        r: least(Sign::Neg, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_list, parse_series};
    use ResidueModule::*;

    fn module(text: &str) -> QQModule {
        QQModule::quadratic(power_series_ring(), parse_list(text, 1).unwrap()).unwrap()
    }

    fn theta_row(q: &QQModule, upto: i64) -> Vec<ResidueModule> {
        (0..=upto).map(|k| q.mg_of(&GroupElem::from_ints(&[k])).unwrap()).collect()
    }

    #[test]
    fn monogenic_examples() {
        let m = po_monogenic(&parse_series("X^3", 1).unwrap()).unwrap();
        assert_eq!(theta_row(&m.module, 5), [Pos, Zero, Pos, Pos, Pos, Pos]);
        assert_eq!(m.normal, Monogenic::term(Sign::Pos, 3));
        let m = po_monogenic(&parse_series("7X^2 + X^5", 1).unwrap()).unwrap();
        assert_eq!(m.normal, Monogenic::One);
        let m = po_monogenic(&parse_series("-X^2", 1).unwrap()).unwrap();
        assert_eq!(theta_row(&m.module, 3), [Pos, Zero, All, All]);
        assert_eq!(m.normal.to_string(), "PO(-X^2)");
        assert_eq!(po_monogenic(&Series::zero(1)).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&module("")).unwrap(), PSQuadClass::A);
        assert_eq!(
            classify(&module("X^3; -X^6")).unwrap(),
            PSQuadClass::E { m: 3, n: 6, sign: Sign::Pos }
        );
        assert_eq!(classify(&module("-1")).unwrap(), PSQuadClass::B);
        let qq = QQModule::generated(power_series_ring(), parse_list("X", 1).unwrap()).unwrap();
        assert_eq!(classify(&qq).unwrap_err(), Error::NotQuadratic);
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(
            presentation_text(&PSQuadClass::D { n: 3 }).unwrap(),
            ["X^3", "-X^3"]
        );
        assert_eq!(presentation_text(&PSQuadClass::D { n: 4 }).unwrap(), ["-X^4"]);
        assert_eq!(
            presentation_text(&PSQuadClass::E { m: 1, n: 5, sign: Sign::Pos }).unwrap(),
            ["X", "-X^5"]
        );
        assert!(two_generator_presentation(&PSQuadClass::C { n: 2, sign: Sign::Pos }).is_err());
    }

    #[test]
    fn lcr_examples() {
        let t = lcr_decompose(&module("-1")).unwrap();
        assert_eq!((t.l, t.c, t.r), (Monogenic::term(Sign::Pos, 1), Monogenic::term(Sign::Neg, 0), Monogenic::term(Sign::Neg, 1)));
        let t = lcr_decompose(&module("X^5; -X^5")).unwrap();
        assert_eq!((t.l, t.c, t.r), (Monogenic::term(Sign::Pos, 5), Monogenic::term(Sign::Neg, 6), Monogenic::term(Sign::Neg, 5)));
        let t = lcr_decompose(&module("")).unwrap();
        assert_eq!((t.l, t.c, t.r), (Monogenic::One, Monogenic::One, Monogenic::One));
    }

    #[test]
    fn rows_match_generated_modules() {
        for n in 1..8u32 {
            for m in (1..n).step_by(2) {
                for sign in [Sign::Pos, Sign::Neg] {
                    let cls = PSQuadClass::E { m, n, sign };
                    let q = presentation_module(&cls).unwrap();
                    assert_eq!(classify(&q).unwrap(), cls);
                    for k in 0..20 {
                        assert_eq!(q.mg_of(&GroupElem::from_ints(&[k as i64])).unwrap(), cls.row(k));
                    }
                }
            }
        }
    }
}
