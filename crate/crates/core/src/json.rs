//! JSON forms of modules, as read and written by the command line.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::char2::{Char2Kind, Char2Module};
use crate::error::{Error, Result};
use crate::group::{ConvexSubgroup, GroupElem};
use crate::parse::parse_series;
use crate::powerseries::PSQuadClass;
use crate::qq::{FamilySpec, QQModule, Repr, ThetaFamily};
use crate::residue::Sign;
use crate::series::{Series, TermJson};

/// A series given either as text or as a sorted term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesJson {
    Text(String),
    Terms(Vec<TermJson<i64>>),
}

impl SeriesJson {
    pub fn to_series(&self, n: usize) -> Result<Series> {
        match self {
            SeriesJson::Text(t) => parse_series(t, n),
            SeriesJson::Terms(terms) => Series::from_json(n, terms),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReprJson {
    Generators { generators: Vec<SeriesJson> },
    Family(FamilySpec),
}

/// `{"H": j, "n": n, "repr": ...}`. Generator lists describe the quadratic
/// module (with `1` adjoined) unless `quasi` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub repr: ReprJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub quasi: bool,
}

impl ModuleJson {
    pub fn from_module(m: &QQModule) -> Self {
        let repr = match m.repr() {
            Repr::Generators(gens) => ReprJson::Generators {
                generators: gens.iter().map(|f| SeriesJson::Terms(f.to_json())).collect(),
            },
            Repr::Family(fam) => ReprJson::Family(fam.to_spec()),
        };
        ModuleJson {
            h: m.subgroup().index(),
            n: Some(m.dim()),
            repr,
            quasi: matches!(m.repr(), Repr::Generators(_)),
        }
    }

    /// Build the module; `default_n` applies when the JSON leaves `n` out.
    pub fn to_module(&self, default_n: usize) -> Result<QQModule> {
        let n = self.n.unwrap_or(default_n);
        let h = ConvexSubgroup::new(self.h, n)?;
        match &self.repr {
            ReprJson::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| g.to_series(n))
                    .collect::<Result<Vec<_>>>()?;
                if self.quasi {
                    QQModule::generated(h, gens)
                } else {
                    QQModule::quadratic(h, gens)
                }
            }
            ReprJson::Family(spec) => Ok(QQModule::from_family(ThetaFamily::from_spec(h, spec)?)),
        }
    }
}

pub fn module_to_value(m: &QQModule) -> Value {
    serde_json::to_value(ModuleJson::from_module(m)).expect("serializable")
}

pub fn module_from_str(text: &str, default_n: usize) -> Result<QQModule> {
    let j: ModuleJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    j.to_module(default_n)
}

/// `{"H": j, "n": n, "kind": ..., "S": ..., "M": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Char2Json {
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(flatten)]
    pub kind: Char2Kind,
}

impl Char2Json {
    pub fn from_module(m: &Char2Module) -> Self {
        let h = m.subgroup();
        Char2Json {
            h: h.index(),
            n: Some(h.dim()),
            kind: m.to_kind(),
        }
    }

    pub fn to_module(&self, default_n: usize) -> Result<Char2Module> {
        let h = ConvexSubgroup::new(self.h, self.n.unwrap_or(default_n))?;
        Char2Module::from_kind(h, &self.kind)
    }
}

pub fn char2_from_str(text: &str, default_n: usize) -> Result<Char2Module> {
    let j: Char2Json = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    j.to_module(default_n)
}

/// Read a class back from its JSON form, e.g. `{"case":"e","m":3,"n":6,"sign":"+"}`.
pub fn class_from_value(v: &Value) -> Result<PSQuadClass> {
    let bad = |msg: &str| Error::Json(msg.to_string());
    let case = v.get("case").and_then(Value::as_str).ok_or_else(|| bad("missing \"case\""))?;
    let num = |key: &str| {
        v.get(key)
            .and_then(Value::as_u64)
            .and_then(|k| u32::try_from(k).ok())
            .ok_or_else(|| bad(&format!("missing or invalid \"{key}\"")))
    };
    let sign = || match v.get("sign").and_then(Value::as_str) {
        Some("+") => Ok(Sign::Pos),
        Some("-") => Ok(Sign::Neg),
        _ => Err(bad("\"sign\" must be \"+\" or \"-\"")),
    };
    let cls = match case {
        "a" => PSQuadClass::A,
        "b" => PSQuadClass::B,
        "c" => PSQuadClass::C { n: num("n")?, sign: sign()? },
        "d" => PSQuadClass::D { n: num("n")? },
        "e" => PSQuadClass::E {
            m: num("m")?,
            n: num("n")?,
            sign: sign()?,
        },
        other => return Err(bad(&format!("unknown case {other:?}"))),
    };
    cls.validate()?;
    Ok(cls)
}

pub fn elem_to_value(g: &GroupElem) -> Value {
    serde_json::to_value(g).expect("serializable")
}
