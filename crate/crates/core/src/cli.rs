//! The `qqm` command line.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::angular::{an, square_witness};
use crate::char2::{c2_classify, c2_contains, c2_intersect, c2_sum, two_square_decompose, Char2Module};
use crate::error::Error;
use crate::field::{monogenic_lattice, po_normal_form_k};
use crate::group::ConvexSubgroup;
use crate::json::{char2_from_str, class_from_value, elem_to_value, module_from_str, module_to_value, Char2Json};
use crate::parse::{parse_char2, parse_char2_list, parse_list, parse_series};
use crate::powerseries::{classify, lcr_decompose, po_monogenic, presentation_module, presentation_text};
use crate::qq::{certify, QQModule};
use crate::series::{window_past, Series};

#[derive(Parser, Debug)]
#[command(name = "qqm", version, about = "Quasi-quadratic modules over iterated Laurent series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Ring {
    /// Number of variables t1..tn.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Index j of the convex subgroup; defaults to n (the valuation ring).
    #[arg(long = "H", visible_alias = "j", value_name = "J")]
    h: Option<usize>,
    /// Precision window past the valuation.
    #[arg(long, default_value_t = crate::series::DEFAULT_WINDOW)]
    prec: i64,
}

#[derive(Args, Debug, Clone)]
struct ModuleArg {
    /// Generators separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    gens: Option<String>,
    /// Module JSON, inline or `@path`.
    #[arg(long)]
    module: Option<String>,
    /// Read `--gens` as quasi-quadratic generators (no `1` adjoined).
    #[arg(long)]
    qq: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Valuation of a series.
    Val {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Angular component and its sign.
    An {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// `f = c·u²` with `c` a positive rational.
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Membership in a module.
    Member {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Also print an explicit representation `x = Σ fᵢ uᵢ²`.
        #[arg(long)]
        certificate: bool,
    },
    /// Sum of two modules (each inline JSON, `@path` or a generator list).
    Sum {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        qq: bool,
    },
    /// Intersection of two modules.
    Intersect {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        qq: bool,
    },
    /// Membership in the support ideal.
    Supp {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Θ-family of a module.
    Theta {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Coordinate bound for `--format table`.
        #[arg(long, default_value_t = 4)]
        radius: i64,
    },
    /// Quadratic, preordering and quasi-semiordering tests.
    Predicates {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Monogenic normal form of `PO(f)`.
    Monogenic {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Row of a quadratic module of F[[X]].
    Classify {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Presentation of a class given as JSON, e.g. `{"case":"d","n":4}`.
    Present { class: String },
    /// `Q_l`, `Q_c`, `Q_r` of a quadratic module of F[[X]].
    Lcr {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Monogenic quadratic modules of K and their inclusions.
    Lattice {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// `x = u² + v²` in characteristic 2.
    #[command(name = "char2-decompose")]
    Char2Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Γ-form of the module generated by characteristic 2 series.
    #[command(name = "char2-classify")]
    Char2Classify {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    #[command(name = "char2-member")]
    Char2Member {
        #[command(flatten)]
        ring: Ring,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    #[command(name = "char2-sum")]
    Char2Sum {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        ring: Ring,
    },
    #[command(name = "char2-intersect")]
    Char2Intersect {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        ring: Ring,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<String, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("usage error: {msg}\n"),
        },
        Err(Failure::Domain(Error::PrecisionIndeterminate)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: "error: precision-indeterminate: the answer depends on terms beyond the given precision\n".into(),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

impl Ring {
    fn subgroup(&self) -> std::result::Result<ConvexSubgroup, Failure> {
        if self.prec < 1 {
            return Err(Failure::Usage("--prec must be positive".into()));
        }
        ConvexSubgroup::new(self.h.unwrap_or(self.n), self.n).map_err(|e| Failure::Usage(e.to_string()))
    }

    fn series(&self, text: &str) -> std::result::Result<Series, Failure> {
        self.subgroup()?;
        Ok(parse_series(text, self.n)?)
    }
}

fn read_source(text: &str) -> std::result::Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// A module from inline JSON, `@path` or a generator list.
fn module_from_source(source: &str, ring: &Ring, qq: bool) -> std::result::Result<QQModule, Failure> {
    let h = ring.subgroup()?;
    let text = read_source(source)?;
    if is_json(&text) {
        return Ok(module_from_str(&text, ring.n)?);
    }
    let gens = parse_list(&text, ring.n)?;
    Ok(if qq {
        QQModule::generated(h, gens)?
    } else {
        QQModule::quadratic(h, gens)?
    })
}

fn module_arg(m: &ModuleArg, ring: &Ring) -> std::result::Result<QQModule, Failure> {
    match (&m.gens, &m.module) {
        (Some(g), None) => {
            ring.subgroup()?;
            let gens = parse_list(g, ring.n)?;
            let h = ring.subgroup()?;
            Ok(if m.qq {
                QQModule::generated(h, gens)?
            } else {
                QQModule::quadratic(h, gens)?
            })
        }
        (None, Some(src)) => {
            let text = read_source(src)?;
            ring.subgroup()?;
            Ok(module_from_str(&text, ring.n)?)
        }
        _ => Err(Failure::Usage("give exactly one of --gens and --module".into())),
    }
}

fn char2_from_source(source: &str, ring: &Ring) -> std::result::Result<Char2Module, Failure> {
    let h = ring.subgroup()?;
    let text = read_source(source)?;
    if is_json(&text) {
        return Ok(char2_from_str(&text, ring.n)?);
    }
    Ok(c2_classify(h, &parse_char2_list(&text, ring.n)?)?)
}

fn line(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("serializable");
    s.push('\n');
    s
}

fn sign_text(s: crate::residue::Sign) -> String {
    s.symbol().to_string()
}

fn dispatch(cmd: Command) -> Out {
    match cmd {
        Command::Val { expr, ring } => {
            let f = ring.series(&expr)?;
            Ok(line(json!({ "val": f.val()?.map(|g| elem_to_value(&g)) })))
        }
        Command::An { expr, ring } => {
            let f = ring.series(&expr)?;
            if f.val()?.is_none() {
                return Err(Error::ZeroInput.into());
            }
            let a = an(&f)?;
            Ok(line(json!({ "an": a.coeff.to_string(), "sign": sign_text(a.sign()) })))
        }
        Command::Sqrt { expr, ring } => {
            let f = ring.series(&expr)?;
            let v = f.val()?.ok_or(Error::ZeroInput)?;
            let target = window_past(&v, ring.prec);
            let w = square_witness(&Series::one(ring.n), &f, Some(&target))?.ok_or(Error::NotSquare)?;
            Ok(line(json!({ "scale": w.scale.to_string(), "root": w.unit.to_string() })))
        }
        Command::Member { ring, module, x, certificate } => {
            let m = module_arg(&module, &ring)?;
            let x = ring.series(&x)?;
            let member = m.contains(&x)?;
            let mut out = json!({ "member": member });
            if certificate && member {
                let gens = m
                    .generators()
                    .ok_or_else(|| Failure::Usage("--certificate needs a generator description".into()))?;
                if let Some(c) = certify(&m.subgroup(), gens, &x)? {
                    let terms: Vec<Value> = c
                        .terms
                        .iter()
                        .map(|(i, u)| json!({ "generator": gens[*i].to_string(), "u": u.to_string() }))
                        .collect();
                    out["certificate"] = json!({ "terms": terms, "through": elem_to_value(&c.through) });
                }
            }
            Ok(line(out))
        }
        Command::Sum { a, b, ring, qq } => {
            let (a, b) = (module_from_source(&a, &ring, qq)?, module_from_source(&b, &ring, qq)?);
            Ok(line(module_to_value(&a.sum(&b)?)))
        }
        Command::Intersect { a, b, ring, qq } => {
            let (a, b) = (module_from_source(&a, &ring, qq)?, module_from_source(&b, &ring, qq)?);
            Ok(line(module_to_value(&a.intersect(&b)?)))
        }
        Command::Supp { ring, module, x } => {
            let m = module_arg(&module, &ring)?;
            let x = ring.series(&x)?;
            Ok(line(json!({ "supp": m.supp_contains(&x)? })))
        }
        Command::Theta { ring, module, format, radius } => {
            let m = module_arg(&module, &ring)?;
            match format {
                Format::Json => Ok(line(module_to_value(&QQModule::from_family(m.theta_of())))),
                Format::Table => {
                    let mut out = String::new();
                    for (g, r) in m.theta().table(radius) {
                        let _ = writeln!(out, "{g}\t{r}");
                    }
                    Ok(out)
                }
                Format::Dot => Err(Failure::Usage("theta supports --format json|table".into())),
            }
        }
        Command::Predicates { ring, module } => {
            let m = module_arg(&module, &ring)?;
            let opt = |r: crate::error::Result<bool>| match r {
                Ok(b) => Ok(json!(b)),
                Err(Error::UnsupportedScope(_)) => Ok(Value::Null),
                Err(e) => Err(e),
            };
            Ok(line(json!({
                "whole_ring": m.is_whole_ring(),
                "quadratic": m.is_quadratic(),
                "preordering": opt(m.is_preordering())?,
                "quasi_semiordering": opt(m.is_quasi_semiordering())?,
            })))
        }
        Command::Monogenic { expr, ring } => {
            let f = ring.series(&expr)?;
            let mut out = json!({ "K": po_normal_form_k(&f)?.label() });
            if ring.n == 1 && f.val()?.is_some_and(|v| v.coords()[0] >= 0) {
                out["power_series"] = json!(po_monogenic(&f)?.normal.to_string());
            }
            Ok(line(out))
        }
        Command::Classify { ring, module } => {
            let m = module_arg(&module, &ring)?;
            let cls = classify(&m)?;
            let mut out = cls.to_json();
            out["presentation"] = json!(presentation_text(&cls)?);
            out["lcr"] = lcr_decompose(&m)?.to_json();
            Ok(line(out))
        }
        Command::Present { class } => {
            let text = read_source(&class)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
            let cls = class_from_value(&v)?;
            Ok(line(json!({
                "presentation": presentation_text(&cls)?,
                "module": module_to_value(&presentation_module(&cls)?),
            })))
        }
        Command::Lcr { ring, module } => {
            let m = module_arg(&module, &ring)?;
            Ok(line(lcr_decompose(&m)?.to_json()))
        }
        Command::Lattice { n, format } => {
            let lat = monogenic_lattice(n).map_err(|e| Failure::Usage(e.to_string()))?;
            let labels: Vec<String> = lat.nodes.iter().map(|v| v.label()).collect();
            match format {
                Format::Dot => Ok(lat.to_dot()),
                Format::Json => Ok(line(json!({
                    "nodes": labels,
                    "edges": lat.edges,
                    "matrix": lat.inclusion_matrix(),
                }))),
                Format::Table => {
                    let mut out = String::new();
                    for (label, row) in labels.iter().zip(lat.inclusion_matrix()) {
                        let bits: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
                        let _ = writeln!(out, "{label}\t{bits}");
                    }
                    Ok(out)
                }
            }
        }
        Command::Char2Decompose { expr, ring } => {
            ring.subgroup()?;
            let x = parse_char2(&expr, ring.n)?;
            let (u, v) = two_square_decompose(&x)?;
            Ok(line(json!({ "u": u.to_string(), "v": v.to_string() })))
        }
        Command::Char2Classify { ring, gens } => {
            let h = ring.subgroup()?;
            let m = c2_classify(h, &parse_char2_list(&gens, ring.n)?)?;
            Ok(line(serde_json::to_value(Char2Json::from_module(&m)).expect("serializable")))
        }
        Command::Char2Member { ring, module, x } => {
            let m = match (&module.gens, &module.module) {
                (Some(g), None) => char2_from_source(g, &ring)?,
                (None, Some(src)) => char2_from_source(src, &ring)?,
                _ => return Err(Failure::Usage("give exactly one of --gens and --module".into())),
            };
            let x = parse_char2(&x, ring.n)?;
            Ok(line(json!({ "member": c2_contains(&m, &x)? })))
        }
        Command::Char2Sum { a, b, ring } => {
            let m = c2_sum(&char2_from_source(&a, &ring)?, &char2_from_source(&b, &ring)?)?;
            Ok(line(serde_json::to_value(Char2Json::from_module(&m)).expect("serializable")))
        }
        Command::Char2Intersect { a, b, ring } => {
            let m = c2_intersect(&char2_from_source(&a, &ring)?, &char2_from_source(&b, &ring)?)?;
            Ok(line(serde_json::to_value(Char2Json::from_module(&m)).expect("serializable")))
        }
    }
}
