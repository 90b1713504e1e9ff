//! WebAssembly bindings behind the static page in `www/`.
//!
//! Each export takes plain numbers and returns a JSON string. The `*_json`
//! functions carry the logic and are callable natively.

use serde::Serialize;
use trotter_core::experiments::{log_grid, run_sweep, slope_analysis, sweep_axis, SlopeSegment, SweepKind, SweepSpec};
use trotter_core::{
    coefficients, empirical_error, kubo_chain, BoundCoefficients, Evolver, ModelConfig, NormKind, Order,
    SimulationParams,
};
use wasm_bindgen::prelude::*;

/// Largest chain the page accepts; keeps a scan under a few seconds.
pub const MAX_QUBITS: usize = 8;
pub const MAX_POINTS: usize = 60;

fn evolver(n: usize, seed: u32) -> Result<Evolver, String> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(format!("n must be between 2 and {MAX_QUBITS}, got {n}"));
    }
    let model = ModelConfig::Heisenberg1d { n, seed: Some(seed as u64), h: None }.build().map_err(|e| e.to_string())?;
    Evolver::new(&model).map_err(|e| e.to_string())
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Description {
    label: String,
    disorder: Vec<f64>,
    sector_sizes: Vec<usize>,
    coefficients: BoundCoefficients,
}

pub fn describe_json(n: usize, seed: u32) -> Result<String, String> {
    let ev = evolver(n, seed)?;
    let coeffs = coefficients(&ev, NormKind::Spectral).map_err(|e| e.to_string())?;
    to_json(&Description {
        label: ev.model().label.clone(),
        disorder: ev.model().disorder.clone().unwrap_or_default(),
        sector_sizes: ev.sectors().block_sizes(),
        coefficients: coeffs,
    })
}

#[derive(Serialize)]
struct ScanPoint {
    x: f64,
    t: f64,
    r: u64,
    pf1: f64,
    pf2: f64,
    bound_main: f64,
    bound_pf1: f64,
    term_boundary: f64,
    term_bulk: f64,
}

#[derive(Serialize)]
struct Scan {
    x_label: &'static str,
    points: Vec<ScanPoint>,
    slopes: Vec<SlopeSegment>,
}

/// Sweeps one panel: `kind` is `fixed_r`, `fixed_t` or `fixed_dt`, `fixed`
/// the held value and `[lo, hi]` the log-spaced range of the free variable.
pub fn error_scan_json(
    n: usize,
    seed: u32,
    kind: &str,
    fixed: f64,
    lo: f64,
    hi: f64,
    count: usize,
) -> Result<String, String> {
    if !(2..=MAX_POINTS).contains(&count) {
        return Err(format!("count must be between 2 and {MAX_POINTS}"));
    }
    let kind: SweepKind = kind.parse().map_err(|e: trotter_core::Error| e.to_string())?;
    let ev = evolver(n, seed)?;
    let coeffs = coefficients(&ev, NormKind::Spectral).map_err(|e| e.to_string())?;
    let grid = log_grid(lo, hi, count).map_err(|e| e.to_string())?;
    let spec = SweepSpec { kind, fixed_value: fixed, grid, orders: vec![Order::First, Order::Second] };
    let records = run_sweep(&ev, &coeffs, &spec, Some(seed as u64), 1).map_err(|e| e.to_string())?;
    let axis = sweep_axis(&records, kind);
    let points = records
        .chunks(2)
        .zip(&axis)
        .map(|(pair, &(x, _))| ScanPoint {
            x,
            t: pair[0].t,
            r: pair[0].r,
            pf1: pair[0].empirical,
            pf2: pair[1].empirical,
            bound_main: pair[0].bound_main,
            bound_pf1: pair[0].bound_pf1,
            term_boundary: pair[0].term_boundary,
            term_bulk: pair[0].term_bulk,
        })
        .collect();
    let slopes = slope_analysis(&axis).unwrap_or_default();
    to_json(&Scan { x_label: kind.free_variable(), points, slopes })
}

#[derive(Serialize)]
struct BoundaryCheck {
    t: f64,
    r: u64,
    conjugation_residual: f64,
    mirrored_residual: f64,
    pf1_error: f64,
    pf2_error: f64,
    boundary_commutator: f64,
    boundary_bound: f64,
}

/// Compares the first- and second-order circuits at one `(t, r)`: the
/// residual of the conjugation identity relating them, both errors, and the
/// boundary-layer commutator that separates them.
pub fn boundary_check_json(n: usize, seed: u32, t: f64, r: u32) -> Result<String, String> {
    let ev = evolver(n, seed)?;
    let p = SimulationParams::new(t, r as u64).map_err(|e| e.to_string())?;
    let kind = NormKind::Spectral;
    let coeffs = coefficients(&ev, kind).map_err(|e| e.to_string())?;
    let res = ev.conjugation_residual(p, kind).map_err(|e| e.to_string())?;
    let k = kubo_chain(&ev, &coeffs, p, kind).map_err(|e| e.to_string())?;
    to_json(&BoundaryCheck {
        t,
        r: p.r,
        conjugation_residual: res.direct,
        mirrored_residual: res.mirrored,
        pf1_error: empirical_error(&ev, p, Order::First, kind).map_err(|e| e.to_string())?,
        pf2_error: empirical_error(&ev, p, Order::Second, kind).map_err(|e| e.to_string())?,
        boundary_commutator: k.measured,
        boundary_bound: k.bound,
    })
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn describe(n: usize, seed: u32) -> Result<String, JsValue> {
    js(describe_json(n, seed))
}

#[wasm_bindgen(js_name = errorScan)]
pub fn error_scan(n: usize, seed: u32, kind: &str, fixed: f64, lo: f64, hi: f64, count: usize) -> Result<String, JsValue> {
    js(error_scan_json(n, seed, kind, fixed, lo, hi, count))
}

#[wasm_bindgen(js_name = boundaryCheck)]
pub fn boundary_check(n: usize, seed: u32, t: f64, r: u32) -> Result<String, JsValue> {
    js(boundary_check_json(n, seed, t, r))
}

#[wasm_bindgen]
pub fn version() -> String {
    trotter_core::VERSION.to_string()
}
