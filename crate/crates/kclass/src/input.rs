//! Family specifications as they arrive from the command line or JSON.
//!
//! JSON schema: `{ "m": integer | "inf", "n": [integers], "tail": {"kind":
//! "zero" | "constant" | "doubling", "c": integer} }`. Integers may also be
//! given as decimal strings, which is how reports echo them back.

use kclass_core::{FamilySpec, Loops, TailSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct SpecInput {
    pub m: Loops,
    pub n: Vec<u64>,
    pub tail: TailSpec,
}

impl SpecInput {
    pub fn to_family(&self) -> Result<FamilySpec, CliError> {
        Ok(FamilySpec::new(self.m, self.n.clone(), self.tail)?)
    }

    /// Builds an input from the `--m`, `--n`, `--tail` flag values.
    pub fn from_flags(m: &str, n: &str, tail: Option<&str>) -> Result<Self, CliError> {
        Ok(SpecInput {
            m: parse_m(m)?,
            n: parse_list(n)?,
            tail: tail.map(parse_tail).transpose()?.unwrap_or(TailSpec::Zero),
        })
    }

    /// Parses `m=8,n=1,0,3,tail=doubling:1`, or an inline JSON object.
    ///
    /// Bare values after `n=` continue the `n` list.
    pub fn parse_compact(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s)
                .map_err(|e| CliError::Input(format!("bad spec JSON: {e}")));
        }
        let mut m = None;
        let mut n: Option<Vec<String>> = None;
        let mut tail = None;
        let mut current = "";
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = match token.split_once('=') {
                Some((k, v)) => {
                    current = k.trim();
                    (current, v.trim())
                }
                None if current == "n" => ("n", token),
                None => {
                    return Err(CliError::Input(format!(
                        "unexpected token `{token}` in `{s}`"
                    )))
                }
            };
            match key {
                "m" => m = Some(parse_m(value)?),
                "n" => n.get_or_insert_with(Vec::new).push(value.to_string()),
                "tail" => tail = Some(parse_tail(value)?),
                other => return Err(CliError::Input(format!("unknown key `{other}` in `{s}`"))),
            }
        }
        let m = m.ok_or_else(|| CliError::Input(format!("missing m in `{s}`")))?;
        let n = n.unwrap_or_default().join(",");
        Ok(SpecInput {
            m,
            n: parse_list(&n)?,
            tail: tail.unwrap_or(TailSpec::Zero),
        })
    }
}

pub fn parse_m(s: &str) -> Result<Loops, CliError> {
    Loops::parse(s).ok_or_else(|| {
        CliError::Input(format!(
            "m must be a non-negative integer or `inf`, got `{s}`"
        ))
    })
}

pub fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Input(format!("bad entry `{t}` in n list")))
        })
        .collect()
}

pub fn parse_tail(s: &str) -> Result<TailSpec, CliError> {
    let s = s.trim();
    if s == "zero" {
        return Ok(TailSpec::Zero);
    }
    let bad = || {
        CliError::Input(format!(
            "tail must be zero|constant:<c>|doubling:<c>, got `{s}`"
        ))
    };
    let (kind, c) = s.split_once(':').ok_or_else(bad)?;
    let c: u64 = c.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "constant" => Ok(TailSpec::Constant(c)),
        "doubling" => Ok(TailSpec::Doubling(c)),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(u64),
    Text(String),
}

impl Number {
    fn text(&self) -> String {
        match self {
            Number::Int(i) => i.to_string(),
            Number::Text(s) => s.clone(),
        }
    }

    fn to_u64(&self) -> Result<u64, CliError> {
        match self {
            Number::Int(i) => Ok(*i),
            Number::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawTail {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<Number>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSpec {
    m: Number,
    n: Vec<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<RawTail>,
}

impl TryFrom<RawSpec> for SpecInput {
    type Error = CliError;

    fn try_from(raw: RawSpec) -> Result<Self, CliError> {
        let tail = match raw.tail {
            None => TailSpec::Zero,
            Some(t) => match (t.kind.as_str(), t.c) {
                ("zero", _) => TailSpec::Zero,
                (kind @ ("constant" | "doubling"), Some(c)) => {
                    parse_tail(&format!("{kind}:{}", c.text()))?
                }
                (kind, _) => {
                    return Err(CliError::Input(format!(
                        "bad tail kind `{kind}` or missing c"
                    )))
                }
            },
        };
        Ok(SpecInput {
            m: parse_m(&raw.m.text())?,
            n: raw.n.iter().map(Number::to_u64).collect::<Result<_, _>>()?,
            tail,
        })
    }
}

impl From<SpecInput> for RawSpec {
    fn from(s: SpecInput) -> Self {
        let tail = match s.tail {
            TailSpec::Zero => RawTail {
                kind: "zero".into(),
                c: None,
            },
            TailSpec::Constant(c) => RawTail {
                kind: "constant".into(),
                c: Some(Number::Text(c.to_string())),
            },
            TailSpec::Doubling(c) => RawTail {
                kind: "doubling".into(),
                c: Some(Number::Text(c.to_string())),
            },
        };
        RawSpec {
            m: Number::Text(s.m.to_string()),
            n: s.n.iter().map(|v| Number::Text(v.to_string())).collect(),
            tail: Some(tail),
        }
    }
}
