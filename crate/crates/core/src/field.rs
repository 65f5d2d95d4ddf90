//! Quasi-quadratic modules of the whole field `K`: maps from square classes
//! to residue modules, and the inclusion lattice of monogenic quadratic modules.

use std::fmt::{self, Write as _};

use crate::angular::{sign_of, square_witness, SquareWitness};
use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::group::{square_class, ConvexSubgroup, SquareClass};
use crate::qq::theta::{class_index, index_class, Patch, ThetaFamily};
use crate::qq::QQModule;
use crate::residue::{rleq, rmeet, rproduct, rsum, ResidueModule, Sign};
use crate::series::Series;

/// A proper quasi-quadratic module of `K`, one residue module per square
/// class, or `K` itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KModule {
    Proper(Vec<ResidueModule>),
    Whole,
}

impl KModule {
    pub fn new(n: usize, assign: Vec<ResidueModule>) -> Result<Self> {
        if assign.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: assign.len(),
            });
        }
        if assign.contains(&ResidueModule::All) {
            return Err(Error::FamilyViolation("a proper module never takes the value F".into()));
        }
        Ok(KModule::Proper(assign))
    }

    pub fn zero(n: usize) -> Self {
        KModule::Proper(vec![ResidueModule::Zero; 1 << n])
    }

    /// `M_ḡ` for a class, `F` for `K`.
    pub fn at(&self, c: &SquareClass) -> ResidueModule {
        match self {
            KModule::Proper(a) => a[class_index(c)],
            KModule::Whole => ResidueModule::All,
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, KModule::Proper(_))
    }

    /// Θ^p of a module over `K`.
    pub fn from_qq(m: &QQModule) -> Result<Self> {
        let h = m.subgroup();
        if !h.is_whole_field() {
            return Err(Error::UnsupportedScope("expected a module of K".into()));
        }
        if m.is_whole_ring() {
            return Ok(KModule::Whole);
        }
        let assign = SquareClass::all(h.dim())
            .iter()
            .map(|c| m.mg_of(&c.representative()))
            .collect::<Result<_>>()?;
        Ok(KModule::Proper(assign))
    }

    /// The module with this Θ^p-image.
    pub fn to_qq(&self, n: usize) -> Result<QQModule> {
        let h = ConvexSubgroup::whole_field(n)?;
        let fam = match self {
            KModule::Whole => ThetaFamily::whole(h),
            KModule::Proper(a) => {
                let patches: Vec<Patch> = a
                    .iter()
                    .enumerate()
                    .map(|(i, &module)| Patch {
                        parity: index_class(n, i),
                        from: Cut::full(0),
                        module,
                    })
                    .collect();
                ThetaFamily::from_patches(h, &patches, Cut::empty(0))?
            }
        };
        Ok(QQModule::from_family(fam))
    }

    pub fn leq(&self, other: &Self) -> bool {
        match (self, other) {
            (_, KModule::Whole) => true,
            (KModule::Whole, KModule::Proper(_)) => false,
            (KModule::Proper(a), KModule::Proper(b)) => a.iter().zip(b).all(|(&x, &y)| rleq(x, y)),
        }
    }
}

/// Pointwise join; any class reaching `F` floods to all of `K`.
pub fn k_sum(a: &KModule, b: &KModule) -> KModule {
    match (a, b) {
        (KModule::Proper(x), KModule::Proper(y)) => {
            let s: Vec<_> = x.iter().zip(y).map(|(&p, &q)| rsum(p, q)).collect();
            if s.contains(&ResidueModule::All) {
                KModule::Whole
            } else {
                KModule::Proper(s)
            }
        }
        _ => KModule::Whole,
    }
}

pub fn k_intersect(a: &KModule, b: &KModule) -> KModule {
    match (a, b) {
        (KModule::Proper(x), KModule::Proper(y)) => {
            KModule::Proper(x.iter().zip(y).map(|(&p, &q)| rmeet(p, q)).collect())
        }
        (KModule::Whole, other) | (other, KModule::Whole) => other.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KPredicates {
    pub quadratic: bool,
    pub preordering: bool,
    pub quasi_semiordering: bool,
}

pub fn k_predicates(m: &KModule) -> Result<KPredicates> {
    let KModule::Proper(a) = m else {
        return Err(Error::UnsupportedScope("predicates are stated for proper modules".into()));
    };
    let n = a.len().trailing_zeros() as usize;
    let quadratic = rleq(ResidueModule::Pos, a[0]);
    let classes = SquareClass::all(n);
    let closed = classes.iter().all(|x| {
        classes
            .iter()
            .all(|y| rleq(rproduct(m.at(x), m.at(y)), m.at(&x.combine(y))))
    });
    Ok(KPredicates {
        quadratic,
        preordering: quadratic && closed,
        quasi_semiordering: a.iter().all(|&r| matches!(r, ResidueModule::Pos | ResidueModule::Neg)),
    })
}

/// A monogenic quadratic module of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonogenicNode {
    /// `K²`.
    Bottom,
    Middle { sign: Sign, class: SquareClass },
    /// `K`.
    Top,
}

impl MonogenicNode {
    pub fn module(&self, n: usize) -> KModule {
        let mut a = vec![ResidueModule::Zero; 1 << n];
        a[0] = ResidueModule::Pos;
        match self {
            MonogenicNode::Bottom => KModule::Proper(a),
            MonogenicNode::Top => KModule::Whole,
            MonogenicNode::Middle { sign, class } => {
                a[class_index(class)] = match sign {
                    Sign::Pos => ResidueModule::Pos,
                    Sign::Neg => ResidueModule::Neg,
                };
                KModule::Proper(a)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            MonogenicNode::Bottom => "K^2".into(),
            MonogenicNode::Top => "K".into(),
            MonogenicNode::Middle { sign, class } => {
                let vars: Vec<String> = class
                    .bits()
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b == 1)
                    .map(|(i, _)| format!("t{}", i + 1))
                    .collect();
                format!("PO({}{})", sign.symbol(), vars.join("*"))
            }
        }
    }
}

impl fmt::Display for MonogenicNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The node `PO_K(f)` lands on.
pub fn po_normal_form_k(f: &Series) -> Result<MonogenicNode> {
    let v = f.val()?.ok_or(Error::ZeroInput)?;
    let sign = sign_of(f)?;
    let class = square_class(&v);
    Ok(match (class.is_identity(), sign) {
        (true, Sign::Pos) => MonogenicNode::Bottom,
        (true, Sign::Neg) => MonogenicNode::Top,
        (false, sign) => MonogenicNode::Middle { sign, class },
    })
}

/// `u` with `f₁² + f₂² = c·u²`; `c = 1` whenever the leading coefficient of the
/// sum is a rational square.
pub fn pythagorean_root(f1: &Series, f2: &Series) -> Result<SquareWitness> {
    let s = &(f1 * f1) + &(f2 * f2);
    let one = Series::one(s.dim());
    square_witness(&one, &s, None)?.ok_or(Error::ZeroInput)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub n: usize,
    pub nodes: Vec<MonogenicNode>,
    /// `(i, j)` with `nodes[i] ⊊ nodes[j]`.
    pub edges: Vec<(usize, usize)>,
}

pub fn monogenic_lattice(n: usize) -> Result<Lattice> {
    ConvexSubgroup::whole_field(n)?;
    let mut nodes = vec![MonogenicNode::Bottom];
    for sign in [Sign::Pos, Sign::Neg] {
        for class in SquareClass::all(n).into_iter().filter(|c| !c.is_identity()) {
            nodes.push(MonogenicNode::Middle { sign, class });
        }
    }
    nodes.push(MonogenicNode::Top);
    let modules: Vec<KModule> = nodes.iter().map(|v| v.module(n)).collect();
    let mut edges = Vec::new();
    for (i, a) in modules.iter().enumerate() {
        for (j, b) in modules.iter().enumerate() {
            if i != j && a.leq(b) && a != b {
                edges.push((i, j));
            }
        }
    }
    Ok(Lattice { n, nodes, edges })
}

impl Lattice {
    /// `matrix[i][j]` is `nodes[i] ⊆ nodes[j]`.
    pub fn inclusion_matrix(&self) -> Vec<Vec<bool>> {
        let modules: Vec<KModule> = self.nodes.iter().map(|v| v.module(self.n)).collect();
        modules
            .iter()
            .map(|a| modules.iter().map(|b| a.leq(b)).collect())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph monogenic {\n  rankdir=BT;\n");
        for (i, v) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", v.label());
        }
        for (i, j) in &self.edges {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}
