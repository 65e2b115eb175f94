//! Class counts for every `m` up to a limit, one residue classifier per `m`.

use kclass_core::classify::MAX_CLASSIFIER_MODULUS;
use kclass_core::{Error, ResidueClassifier};
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub m: u64,
    pub exact_classes: usize,
    pub stable_classes: usize,
    pub divergent_pair: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub smallest_divergent_m: Option<u64>,
}

/// Rows for `m = 2..=max_m`, in ascending `m` regardless of scheduling.
pub fn scan(max_m: u64) -> Result<ScanResult, Error> {
    if max_m < 2 {
        return Err(Error::Regime {
            op: "scan",
            requirement: "max m >= 2",
        });
    }
    if max_m - 1 > MAX_CLASSIFIER_MODULUS {
        return Err(Error::Regime {
            op: "scan",
            requirement: "max m - 1 <= 4096",
        });
    }
    let rows = (2..=max_m)
        .into_par_iter()
        .map(|m| {
            let c = ResidueClassifier::new(m - 1)?;
            Ok(ScanRow {
                m,
                exact_classes: c.exact_classes(),
                stable_classes: c.stable_classes(),
                divergent_pair: c.divergent_pair(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let smallest_divergent_m = rows
        .iter()
        .find(|r| r.exact_classes != r.stable_classes)
        .map(|r| r.m);
    Ok(ScanResult {
        rows,
        smallest_divergent_m,
    })
}
