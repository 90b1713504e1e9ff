use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use trotter_core::experiments::{fit_alpha_beta, fit_pf1_scale, fit_points, ErrorRecord};

use crate::data::{load, same_model};
use crate::error::{config, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitOutput {
    pub alpha: f64,
    pub beta: f64,
    pub residual: f64,
    pub points_used: usize,
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub clamp: f64,
    /// Best single scale on `C2 t^2/r` and its RMS log10 residual.
    pub pf1_scale: f64,
    pub pf1_residual: f64,
    pub inputs: Vec<PathBuf>,
}

pub fn run(inputs: &[PathBuf]) -> CliResult<FitOutput> {
    if inputs.is_empty() {
        return Err(config("fit needs at least one CSV"));
    }
    let mut records: Vec<ErrorRecord> = Vec::new();
    let mut coeffs = None;
    for path in inputs {
        let data = load(path)?;
        match &coeffs {
            None => coeffs = Some(data.coefficients),
            Some(c) if !same_model(c, &data.coefficients) => {
                return Err(config(format!(
                    "{}: bound coefficients differ from {}; fit each model separately",
                    path.display(),
                    inputs[0].display()
                )))
            }
            Some(_) => {}
        }
        records.extend(data.records);
    }
    let coeffs = coeffs.expect("at least one input");
    let points = fit_points(&records);
    if points.is_empty() {
        return Err(config("no usable first-order records: need finite positive error and no drift flag"));
    }
    let fit = fit_alpha_beta(&records, &coeffs);
    let (pf1_scale, pf1_residual) = fit_pf1_scale(&points, &coeffs);
    Ok(FitOutput {
        alpha: fit.alpha,
        beta: fit.beta,
        residual: fit.residual,
        points_used: fit.points_used,
        degenerate: fit.degenerate,
        warning: fit.degenerate.then(|| {
            "degenerate fit: the data do not include both boundary- and bulk-dominated points".to_string()
        }),
        c1: coeffs.c1,
        c2: coeffs.c2,
        c3: coeffs.c3,
        clamp: coeffs.clamp(),
        pf1_scale,
        pf1_residual,
        inputs: inputs.to_vec(),
    })
}
