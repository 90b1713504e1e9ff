//! Semi-empirical fit of the main bound's functional form to measured error.
//!
//! The model curve keeps `c2` and rescales the other two coefficients:
//! `f(t, r) = min(c2 t^2/r, (c1/alpha) t/r + (c3/beta) t^3/r^2, 2|I|)`.
//! `alpha` and `beta` minimize the squared log10 residual, first on a coarse
//! log grid and then by a compass search in log space.

use serde::{Deserialize, Serialize};

use super::sweep::ErrorRecord;
use crate::bounds::BoundCoefficients;
use crate::evolution::Order;

/// Search box for both scale factors.
pub const FIT_RANGE: (f64, f64) = (1e-2, 1e2);
const GRID_POINTS: usize = 81;
const REL_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub alpha: f64,
    pub beta: f64,
    /// Root-mean-square log10 residual.
    pub residual: f64,
    pub points_used: usize,
    /// Set when the data cannot pin both parameters: fewer than two points,
    /// or no point where each of the boundary and bulk terms dominates the
    /// selected branch.
    pub degenerate: bool,
}

/// One observation: total time, timestep count, measured error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPoint {
    pub t: f64,
    pub r: u64,
    pub empirical: f64,
}

pub fn semi_empirical(coeffs: &BoundCoefficients, t: f64, r: u64, alpha: f64, beta: f64) -> f64 {
    let rf = r as f64;
    let middle = coeffs.c1 / alpha * t / rf + coeffs.c3 / beta * t * t * t / (rf * rf);
    coeffs.bound_pf1(t, r).min(middle).min(coeffs.clamp())
}

/// Usable first-order points: finite positive error, no drift flag.
pub fn fit_points(records: &[ErrorRecord]) -> Vec<FitPoint> {
    records
        .iter()
        .filter(|r| r.order == Order::First && !r.flagged() && r.empirical > 0.0)
        .map(|r| FitPoint { t: r.t, r: r.r, empirical: r.empirical })
        .collect()
}

fn objective(points: &[FitPoint], coeffs: &BoundCoefficients, la: f64, lb: f64) -> f64 {
    let (a, b) = (10f64.powf(la), 10f64.powf(lb));
    points
        .iter()
        .map(|p| {
            let d = semi_empirical(coeffs, p.t, p.r, a, b).log10() - p.empirical.log10();
            d * d
        })
        .sum()
}

fn is_degenerate(points: &[FitPoint], coeffs: &BoundCoefficients, alpha: f64, beta: f64) -> bool {
    if points.len() < 2 {
        return true;
    }
    let (mut boundary, mut bulk) = (false, false);
    for p in points {
        let rf = p.r as f64;
        let b1 = coeffs.c1 / alpha * p.t / rf;
        let b3 = coeffs.c3 / beta * p.t.powi(3) / (rf * rf);
        let middle = b1 + b3;
        if middle < coeffs.bound_pf1(p.t, p.r) && middle < coeffs.clamp() {
            if b1 >= b3 {
                boundary = true;
            } else {
                bulk = true;
            }
        }
    }
    !(boundary && bulk)
}

pub fn fit_alpha_beta(records: &[ErrorRecord], coeffs: &BoundCoefficients) -> FitResult {
    fit_alpha_beta_points(&fit_points(records), coeffs)
}

pub fn fit_alpha_beta_points(points: &[FitPoint], coeffs: &BoundCoefficients) -> FitResult {
    let (lo, hi) = (FIT_RANGE.0.log10(), FIT_RANGE.1.log10());
    if points.is_empty() {
        return FitResult { alpha: 1.0, beta: 1.0, residual: f64::NAN, points_used: 0, degenerate: true };
    }
    let spacing = (hi - lo) / (GRID_POINTS - 1) as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..GRID_POINTS {
        for j in 0..GRID_POINTS {
            let (la, lb) = (lo + spacing * i as f64, lo + spacing * j as f64);
            let v = objective(points, coeffs, la, lb);
            if v < best.0 {
                best = (v, la, lb);
            }
        }
    }

    let (mut val, mut la, mut lb) = best;
    let mut step = spacing;
    let min_step = (1.0 + REL_STEP).log10();
    while step > min_step {
        let mut moved = false;
        for (da, db) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (na, nb) = ((la + da).clamp(lo, hi), (lb + db).clamp(lo, hi));
            let v = objective(points, coeffs, na, nb);
            if v < val {
                (val, la, lb) = (v, na, nb);
                moved = true;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }

    let (alpha, beta) = (10f64.powf(la), 10f64.powf(lb));
    FitResult {
        alpha,
        beta,
        residual: (val / points.len() as f64).sqrt(),
        points_used: points.len(),
        degenerate: is_degenerate(points, coeffs, alpha, beta),
    }
}

/// Best single scale `s` for the pure first-order form `s c2 t^2 / r`,
/// with its RMS log10 residual. Closed form in log space.
pub fn fit_pf1_scale(points: &[FitPoint], coeffs: &BoundCoefficients) -> (f64, f64) {
    if points.is_empty() {
        return (1.0, f64::NAN);
    }
    let diffs: Vec<f64> = points
        .iter()
        .map(|p| p.empirical.log10() - coeffs.bound_pf1(p.t, p.r).log10())
        .collect();
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let rms = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / diffs.len() as f64).sqrt();
    (10f64.powf(mean), rms)
}
