//! Report schema. Every integer is a decimal string; the text format is a
//! flattening of the same JSON value.

use kclass_core::{
    CaseTag, CokernelInvariants, ConeDescriptor, DerivedScalars, FullnessVerdict, GroupDescriptor,
    IsoWitness, PreorderedGroup, RationalOrInfinity, SixTermInvariant, Unstabilized,
};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use crate::input::SpecInput;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const UNKNOWN_NOTE: &str = "see Example (α finite): K-theory does not decide";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<SpecInput>,
    pub scalars: Vec<ScalarsJson>,
    pub invariant: Vec<InvariantJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    pub verdict: Option<Verdict>,
    pub witness: Option<WitnessJson>,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            scalars: Vec::new(),
            invariant: Vec::new(),
            oracle: None,
            verdict: None,
            witness: None,
            version: VERSION.to_string(),
        }
    }

    pub fn push_spec(
        &mut self,
        input: SpecInput,
        inv: &SixTermInvariant,
        scalars: &DerivedScalars,
    ) {
        self.inputs.push(input);
        self.invariant.push(InvariantJson::from(inv));
        self.scalars.push(ScalarsJson::from(scalars));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut lines = Vec::new();
        flatten(&value, String::new(), &mut lines);
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

/// `path: value` lines for every leaf; empty arrays and objects are kept as `[]` / `{}`.
pub fn flatten(value: &Value, path: String, out: &mut Vec<String>) {
    let leaf = |out: &mut Vec<String>, text: String| {
        out.push(if path.is_empty() {
            text
        } else {
            format!("{path}: {text}")
        })
    };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(v, p, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, format!("{path}[{i}]"), out);
            }
        }
        Value::Object(_) => leaf(out, "{}".into()),
        Value::Array(_) => leaf(out, "[]".into()),
        Value::String(s) => leaf(out, s.clone()),
        other => leaf(out, other.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarsJson {
    pub alpha: String,
    pub k: Option<String>,
    #[serde(rename = "N")]
    pub n: Option<String>,
    pub x: Option<String>,
    #[serde(rename = "M")]
    pub m_odd: Option<String>,
}

impl From<&DerivedScalars> for ScalarsJson {
    fn from(s: &DerivedScalars) -> Self {
        ScalarsJson {
            alpha: s.alpha.to_string(),
            k: s.k.map(|v| v.to_string()),
            n: s.n.as_ref().map(|v| v.to_string()),
            x: s.x.map(|v| v.to_string()),
            m_odd: s.odd_part.map(|v| v.to_string()),
        }
    }
}

impl TryFrom<&ScalarsJson> for DerivedScalars {
    type Error = CliError;

    fn try_from(s: &ScalarsJson) -> Result<Self, CliError> {
        Ok(DerivedScalars {
            alpha: RationalOrInfinity::parse(&s.alpha).ok_or_else(|| bad("alpha", &s.alpha))?,
            k: s.k.as_deref().map(|v| num(v, "k")).transpose()?,
            n: s.n
                .as_deref()
                .map(|v| v.parse::<BigUint>().map_err(|_| bad("N", v)))
                .transpose()?,
            x: s.x.as_deref().map(|v| num(v, "x")).transpose()?,
            odd_part: s.m_odd.as_deref().map(|v| num(v, "M")).transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl From<GroupDescriptor> for GroupJson {
    fn from(g: GroupDescriptor) -> Self {
        GroupJson {
            tag: g.tag().to_string(),
            order: g.order_parameter().map(|o| o.to_string()),
        }
    }
}

impl TryFrom<&GroupJson> for GroupDescriptor {
    type Error = CliError;

    fn try_from(g: &GroupJson) -> Result<Self, CliError> {
        let order = || -> Result<u64, CliError> {
            let o = g
                .order
                .as_deref()
                .ok_or_else(|| bad("group order", "missing"))?;
            num(o, "group order")
        };
        Ok(match g.tag.as_str() {
            "DyadicLine" => GroupDescriptor::DyadicLine,
            "DyadicPlusFree" => GroupDescriptor::DyadicPlusFree,
            "DyadicPlusTorsion" => GroupDescriptor::DyadicPlusTorsion(order()?),
            "FreeZ" => GroupDescriptor::FreeZ,
            "CyclicMod" => GroupDescriptor::CyclicMod(order()?),
            "Trivial" => GroupDescriptor::Trivial,
            other => return Err(bad("group tag", other)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConeJson {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with_full_class: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Box<ConeJson>>,
}

impl From<&ConeDescriptor> for ConeJson {
    fn from(c: &ConeDescriptor) -> Self {
        let mut out = ConeJson {
            tag: c.tag().to_string(),
            with_full_class: None,
            alpha: None,
            ideal: None,
        };
        match c {
            ConeDescriptor::AllPositive { with_full_class } => {
                out.with_full_class = Some(*with_full_class)
            }
            ConeDescriptor::AlphaCone(a) => out.alpha = Some(a.to_string()),
            ConeDescriptor::Lexicographic { ideal } => {
                out.ideal = Some(Box::new(ConeJson::from(&**ideal)))
            }
            ConeDescriptor::StandardDyadicCone | ConeDescriptor::StandardIntegerCone => {}
        }
        out
    }
}

impl TryFrom<&ConeJson> for ConeDescriptor {
    type Error = CliError;

    fn try_from(c: &ConeJson) -> Result<Self, CliError> {
        Ok(match c.tag.as_str() {
            "AllPositive" => ConeDescriptor::AllPositive {
                with_full_class: c
                    .with_full_class
                    .ok_or_else(|| bad("withFullClass", "missing"))?,
            },
            "AlphaCone" => {
                let a = c.alpha.as_deref().ok_or_else(|| bad("alpha", "missing"))?;
                ConeDescriptor::AlphaCone(
                    RationalOrInfinity::parse(a).ok_or_else(|| bad("alpha", a))?,
                )
            }
            "StandardDyadicCone" => ConeDescriptor::StandardDyadicCone,
            "StandardIntegerCone" => ConeDescriptor::StandardIntegerCone,
            "Lexicographic" => {
                let ideal = c
                    .ideal
                    .as_deref()
                    .ok_or_else(|| bad("ideal cone", "missing"))?;
                ConeDescriptor::Lexicographic {
                    ideal: Box::new(ConeDescriptor::try_from(ideal)?),
                }
            }
            other => return Err(bad("cone tag", other)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderedJson {
    pub group: GroupJson,
    pub cone: ConeJson,
}

impl From<&PreorderedGroup> for PreorderedJson {
    fn from(pg: &PreorderedGroup) -> Self {
        PreorderedJson {
            group: pg.group().into(),
            cone: pg.cone().into(),
        }
    }
}

impl TryFrom<&PreorderedJson> for PreorderedGroup {
    type Error = CliError;

    fn try_from(p: &PreorderedJson) -> Result<Self, CliError> {
        Ok(PreorderedGroup::new(
            (&p.group).try_into()?,
            (&p.cone).try_into()?,
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K1Json {
    pub ideal: GroupJson,
    pub middle: GroupJson,
    pub quotient: GroupJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantJson {
    pub ideal: PreorderedJson,
    pub middle: PreorderedJson,
    pub quotient: PreorderedJson,
    pub k1: K1Json,
    pub case_tag: String,
    pub index_map_zero: bool,
}

impl From<&SixTermInvariant> for InvariantJson {
    fn from(inv: &SixTermInvariant) -> Self {
        InvariantJson {
            ideal: (&inv.ideal).into(),
            middle: (&inv.middle).into(),
            quotient: (&inv.quotient).into(),
            k1: K1Json {
                ideal: inv.k1_ideal.into(),
                middle: inv.k1_middle.into(),
                quotient: inv.k1_quotient.into(),
            },
            case_tag: inv.case_tag.as_str().to_string(),
            index_map_zero: inv.index_map_zero,
        }
    }
}

impl TryFrom<&InvariantJson> for SixTermInvariant {
    type Error = CliError;

    fn try_from(j: &InvariantJson) -> Result<Self, CliError> {
        Ok(SixTermInvariant {
            ideal: (&j.ideal).try_into()?,
            middle: (&j.middle).try_into()?,
            quotient: (&j.quotient).try_into()?,
            k1_ideal: (&j.k1.ideal).try_into()?,
            k1_middle: (&j.k1.middle).try_into()?,
            k1_quotient: (&j.k1.quotient).try_into()?,
            index_map_zero: j.index_map_zero,
            case_tag: CaseTag::parse(&j.case_tag).ok_or_else(|| bad("caseTag", &j.case_tag))?,
        })
    }
}

/// Cokernel of the truncated presentation at the oracle depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleJson {
    pub depth: String,
    pub free_rank: String,
    pub torsion: Vec<String>,
}

impl OracleJson {
    pub fn new(depth: usize, inv: &CokernelInvariants) -> Self {
        OracleJson {
            depth: depth.to_string(),
            free_rank: inv.free_rank.to_string(),
            torsion: inv.torsion.iter().map(|t| t.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessJson {
    pub l: String,
    pub l_prime: String,
    pub u: Option<String>,
}

impl From<&IsoWitness> for WitnessJson {
    fn from(w: &IsoWitness) -> Self {
        WitnessJson {
            l: w.l.to_string(),
            l_prime: w.l_prime.to_string(),
            u: w.unit.map(|u| u.to_string()),
        }
    }
}

impl TryFrom<&WitnessJson> for IsoWitness {
    type Error = CliError;

    fn try_from(w: &WitnessJson) -> Result<Self, CliError> {
        Ok(IsoWitness {
            l: num(&w.l, "l")?,
            l_prime: num(&w.l_prime, "lPrime")?,
            unit: w.u.as_deref().map(|u| num(u, "u")).transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Verdict {
    #[serde(rename_all = "camelCase")]
    Invariant {
        k_lexicographic: bool,
        permanence: bool,
    },
    #[serde(rename_all = "camelCase")]
    Fullness {
        stenotic: bool,
        k_lexicographic: bool,
        stabilized_full: bool,
        unstabilized: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    #[serde(rename_all = "camelCase")]
    Compare {
        mode: String,
        out_of_scope: bool,
        isomorphic: Option<bool>,
        reason: Option<String>,
    },
    #[serde(rename_all = "camelCase")]
    Scan {
        max_m: String,
        rows: Vec<ScanRowJson>,
        smallest_divergent_m: Option<String>,
    },
}

impl Verdict {
    pub fn fullness(v: &FullnessVerdict) -> Self {
        let (unstabilized, note) = match v.unstabilized {
            Unstabilized::Full => ("Full", None),
            Unstabilized::Unknown => ("Unknown", Some(UNKNOWN_NOTE.to_string())),
        };
        Verdict::Fullness {
            stenotic: v.stenotic,
            k_lexicographic: v.k_lexicographic,
            stabilized_full: v.stabilized_full,
            unstabilized: unstabilized.to_string(),
            note,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRowJson {
    pub m: String,
    pub exact_classes: String,
    pub stable_classes: String,
    pub divergent_pair: Option<[String; 2]>,
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| bad(what, s))
}

fn bad(what: &str, value: &str) -> CliError {
    CliError::Input(format!("report field {what}: bad value `{value}`"))
}
