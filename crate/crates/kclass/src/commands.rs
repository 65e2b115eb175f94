//! One function per subcommand, each producing a [`Report`].

use kclass_core::ktheory::default_oracle_depth;
use kclass_core::{
    decide_fullness, exact_iso, invariant_of, is_k_lexicographic, permanence_check, stable_iso,
    truncated_k0_oracle, Comparison, Error, Loops,
};

use crate::error::CliError;
use crate::input::SpecInput;
use crate::report::{OracleJson, Report, ScanRowJson, Verdict, WitnessJson};
use crate::scan::scan;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Stable,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Stable => "stable",
        }
    }
}

/// Invariant report. For `1 < m < inf` the truncated presentation is also
/// reduced at `depth` (default `k + 3`) and reported under `oracle`.
pub fn cmd_invariant(
    command: &str,
    input: &SpecInput,
    depth: Option<usize>,
) -> Result<Report, CliError> {
    let spec = input.to_family()?;
    let (inv, scalars) = invariant_of(&spec)?;
    let mut report = Report::new(command);
    if let Loops::Finite(m) = spec.m() {
        if m > 1 {
            let depth = depth.unwrap_or_else(|| default_oracle_depth(&spec));
            report.oracle = Some(OracleJson::new(depth, &truncated_k0_oracle(&spec, depth)?));
        }
    }
    if depth.is_some() && report.oracle.is_none() {
        return Err(Error::Regime {
            op: "--depth",
            requirement: "1 < m < inf",
        }
        .into());
    }
    report.verdict = Some(Verdict::Invariant {
        k_lexicographic: is_k_lexicographic(&inv)?,
        permanence: permanence_check(&inv),
    });
    report.push_spec(input.clone(), &inv, &scalars);
    Ok(report)
}

pub fn cmd_fullness(command: &str, input: &SpecInput) -> Result<Report, CliError> {
    let spec = input.to_family()?;
    let (inv, scalars) = invariant_of(&spec)?;
    let verdict = decide_fullness(&spec)?;
    let mut report = Report::new(command);
    report.push_spec(input.clone(), &inv, &scalars);
    report.verdict = Some(Verdict::fullness(&verdict));
    Ok(report)
}

/// Comparison report. Out-of-scope comparisons still produce a full report
/// (with `isomorphic: null`); the caller decides the exit code.
pub fn cmd_compare(
    command: &str,
    a: &SpecInput,
    b: &SpecInput,
    mode: Mode,
) -> Result<Report, CliError> {
    let (fa, fb) = (a.to_family()?, b.to_family()?);
    let comparison = match mode {
        Mode::Exact => exact_iso(&fa, &fb)?,
        Mode::Stable => stable_iso(&fa, &fb)?,
    };
    let mut report = Report::new(command);
    for (input, spec) in [(a, &fa), (b, &fb)] {
        let (inv, scalars) = invariant_of(spec)?;
        report.push_spec(input.clone(), &inv, &scalars);
    }
    report.verdict = Some(match &comparison {
        Comparison::Decided(v) => {
            report.witness = v.witness.as_ref().map(WitnessJson::from);
            Verdict::Compare {
                mode: mode.as_str().into(),
                out_of_scope: false,
                isomorphic: Some(v.isomorphic),
                reason: v.reason.map(String::from),
            }
        }
        Comparison::OutOfScope(_) => Verdict::Compare {
            mode: mode.as_str().into(),
            out_of_scope: true,
            isomorphic: None,
            reason: Some("comparison requires 1 < m < inf".into()),
        },
    });
    Ok(report)
}

pub fn cmd_scan(command: &str, max_m: u64) -> Result<Report, CliError> {
    let result = scan(max_m)?;
    let mut report = Report::new(command);
    report.verdict = Some(Verdict::Scan {
        max_m: max_m.to_string(),
        rows: result
            .rows
            .iter()
            .map(|r| ScanRowJson {
                m: r.m.to_string(),
                exact_classes: r.exact_classes.to_string(),
                stable_classes: r.stable_classes.to_string(),
                divergent_pair: r
                    .divergent_pair
                    .map(|(a, b)| [a.to_string(), b.to_string()]),
            })
            .collect(),
        smallest_divergent_m: result.smallest_divergent_m.map(|m| m.to_string()),
    });
    Ok(report)
}
