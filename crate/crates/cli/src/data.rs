//! Sweep outputs on disk: the CSV, its metadata sidecar, and the bound
//! coefficients recovered from either.

use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use trotter_core::experiments::{read_records, ErrorRecord, SweepKind};
use trotter_core::{BoundCoefficients, ModelConfig, NormKind, Order};

use crate::config::{read_json, RunConfig};
use crate::error::{config, CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub version: String,
    pub rng: String,
    pub model: ModelConfig,
    pub label: String,
    pub disorder: Option<Vec<f64>>,
    pub norm: NormKind,
    pub coefficients: BoundCoefficients,
    pub kind: SweepKind,
    pub fixed_value: f64,
    pub grid: Vec<f64>,
    pub orders: Vec<Order>,
    pub records: usize,
    pub config: RunConfig,
}

/// `<csv>.meta.json`
pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub struct SweepData {
    pub records: Vec<ErrorRecord>,
    pub coefficients: BoundCoefficients,
    pub meta: Option<SweepMetadata>,
}

/// Reads a sweep CSV. Coefficients come from the sidecar when one exists,
/// otherwise from the bound columns of the rows themselves.
pub fn load(path: &Path) -> CliResult<SweepData> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let records = read_records(file).map_err(|e| config(format!("{}: {e}", path.display())))?;
    if records.is_empty() {
        return Err(config(format!("{}: no records", path.display())));
    }
    let side = sidecar_path(path);
    let meta: Option<SweepMetadata> = if side.exists() { Some(read_json(&side)?) } else { None };
    let coefficients = match &meta {
        Some(m) => m.coefficients,
        None => coefficients_from_rows(&records)
            .ok_or_else(|| config(format!("{}: cannot recover bound coefficients", path.display())))?,
    };
    Ok(SweepData { records, coefficients, meta })
}

/// Inverts the recorded bound terms. The pair `s` is not recoverable and is
/// filled with the symmetric value `8 c3`; the clamp is found from rows
/// where it binds, else assumed to be the spectral value 2.
pub fn coefficients_from_rows(records: &[ErrorRecord]) -> Option<BoundCoefficients> {
    let rec = records.iter().find(|r| r.t > 0.0)?;
    let (t, r) = (rec.t, rec.r as f64);
    let c1 = rec.term_boundary * r / t;
    let c2 = rec.bound_pf1 * r / (t * t);
    let c3 = rec.term_bulk * r * r / (t * t * t);
    let clamp = records
        .iter()
        .filter(|x| x.bound_main < x.bound_pf1.min(x.term_boundary + x.term_bulk) * (1.0 - 1e-12))
        .map(|x| x.bound_main)
        .next()
        .unwrap_or(2.0);
    Some(BoundCoefficients {
        c1,
        c2,
        c3,
        s: [8.0 * c3; 2],
        norm_h1: c1,
        norm_h2: c1,
        norm_kind: NormKind::Spectral,
        identity_norm: clamp / 2.0,
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}

pub fn same_model(a: &BoundCoefficients, b: &BoundCoefficients) -> bool {
    close(a.c1, b.c1) && close(a.c2, b.c2) && close(a.c3, b.c3) && close(a.clamp(), b.clamp())
}
