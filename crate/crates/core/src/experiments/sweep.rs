use serde::{Deserialize, Serialize};

use crate::bounds::BoundCoefficients;
use crate::error::{input, Result};
use crate::evolution::{Evolver, Order, SimulationParams};
use crate::norms::{norm, unitarity_drift};

/// Points whose product-formula unitary drifts further than this from
/// unitarity are flagged and left out of fits.
pub const DRIFT_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// `r` held fixed, grid over `t`.
    FixedR,
    /// `t` held fixed, grid over `r`.
    FixedT,
    /// `dt = t/r` held fixed, grid over `t`.
    FixedDt,
}

impl SweepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::FixedR => "fixed_r",
            SweepKind::FixedT => "fixed_t",
            SweepKind::FixedDt => "fixed_dt",
        }
    }

    /// Name of the swept variable.
    pub fn free_variable(&self) -> &'static str {
        match self {
            SweepKind::FixedT => "r",
            _ => "t",
        }
    }
}

impl std::str::FromStr for SweepKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed_r" => Ok(SweepKind::FixedR),
            "fixed_t" => Ok(SweepKind::FixedT),
            "fixed_dt" => Ok(SweepKind::FixedDt),
            _ => Err(input(format!("unknown sweep kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub kind: SweepKind,
    /// The held value: `r`, `t` or `dt` depending on `kind`.
    pub fixed_value: f64,
    /// Strictly increasing values of the free variable.
    pub grid: Vec<f64>,
    pub orders: Vec<Order>,
}

/// `count` points log-spaced over `[lo, hi]`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(input(format!("log grid needs 0 < lo < hi, got [{lo}, {hi}]")));
    }
    match count {
        0 => Err(input("log grid needs at least one point")),
        1 => Ok(vec![lo]),
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            let step = (b - a) / (count - 1) as f64;
            let mut g: Vec<f64> = (0..count).map(|k| 10f64.powf(a + step * k as f64)).collect();
            g[0] = lo;
            g[count - 1] = hi;
            Ok(g)
        }
    }
}

fn round_steps(x: f64) -> u64 {
    x.round().max(1.0) as u64
}

impl SweepSpec {
    /// Resolves the grid into `(t, r)` points. Timestep counts are rounded
    /// to integers `>= 1` and duplicates collapsed; for fixed-`dt` sweeps `t`
    /// is recomputed as `r * dt`.
    pub fn points(&self) -> Result<Vec<SimulationParams>> {
        if self.grid.is_empty() {
            return Err(input("sweep grid is empty"));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(input("sweep grid must be strictly increasing"));
        }
        if self.grid.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(input("sweep grid values must be positive and finite"));
        }
        if !(self.fixed_value.is_finite() && self.fixed_value > 0.0) {
            return Err(input(format!("fixed value must be positive, got {}", self.fixed_value)));
        }
        let mut out: Vec<SimulationParams> = Vec::with_capacity(self.grid.len());
        for &x in &self.grid {
            let p = match self.kind {
                SweepKind::FixedR => SimulationParams::new(x, round_steps(self.fixed_value))?,
                SweepKind::FixedT => SimulationParams::new(self.fixed_value, round_steps(x))?,
                SweepKind::FixedDt => {
                    let r = round_steps(x / self.fixed_value);
                    SimulationParams::new(r as f64 * self.fixed_value, r)?
                }
            };
            if out.last().is_some_and(|q| q.r == p.r && q.t == p.t) {
                continue;
            }
            out.push(p);
        }
        Ok(out)
    }
}

/// One sweep point for one product formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub n: usize,
    pub seed: Option<u64>,
    pub t: f64,
    pub r: u64,
    pub dt: f64,
    pub order: Order,
    pub empirical: f64,
    pub bound_pf1: f64,
    pub bound_main: f64,
    pub term_boundary: f64,
    pub term_bulk: f64,
    pub bound_pf2: f64,
    pub unitarity_drift: f64,
}

impl ErrorRecord {
    pub fn flagged(&self) -> bool {
        !(self.unitarity_drift <= DRIFT_LIMIT) || !self.empirical.is_finite()
    }

    pub fn params(&self) -> SimulationParams {
        SimulationParams { t: self.t, r: self.r }
    }
}

fn evaluate_point(
    evolver: &Evolver,
    coeffs: &BoundCoefficients,
    orders: &[Order],
    seed: Option<u64>,
    p: SimulationParams,
) -> Vec<ErrorRecord> {
    let exact = evolver.exact(p.t);
    orders
        .iter()
        .map(|&order| {
            let u = evolver.pf_unitary(p, order);
            let empirical = norm(&exact.sub(&u), coeffs.norm_kind).unwrap_or(f64::NAN);
            let drift = unitarity_drift(&u).unwrap_or(f64::NAN);
            let pf2_order = if order == Order::SecondMirrored { order } else { Order::Second };
            ErrorRecord {
                n: evolver.model().n(),
                seed,
                t: p.t,
                r: p.r,
                dt: p.dt(),
                order,
                empirical,
                bound_pf1: coeffs.bound_pf1(p.t, p.r),
                bound_main: coeffs.bound_main(p.t, p.r),
                term_boundary: coeffs.term_boundary(p.t, p.r),
                term_bulk: coeffs.term_bulk(p.t, p.r),
                bound_pf2: coeffs.bound_pf2(p.t, p.r, pf2_order),
                unitarity_drift: drift,
            }
        })
        .collect()
}

/// Evaluates every grid point for every requested order.
///
/// Records come back in grid order, orders in the order given, regardless of
/// `threads`. A point whose linear algebra fails carries NaN rather than
/// aborting the sweep.
pub fn run_sweep(
    evolver: &Evolver,
    coeffs: &BoundCoefficients,
    spec: &SweepSpec,
    seed: Option<u64>,
    threads: usize,
) -> Result<Vec<ErrorRecord>> {
    if spec.orders.is_empty() {
        return Err(input("sweep needs at least one product-formula order"));
    }
    let points = spec.points()?;
    let eval = |p: &SimulationParams| evaluate_point(evolver, coeffs, &spec.orders, seed, *p);
    let per_point: Vec<Vec<ErrorRecord>> = run_points(&points, threads, eval)?;
    Ok(per_point.into_iter().flatten().collect())
}

#[cfg(feature = "parallel")]
fn run_points<F>(points: &[SimulationParams], threads: usize, f: F) -> Result<Vec<Vec<ErrorRecord>>>
where
    F: Fn(&SimulationParams) -> Vec<ErrorRecord> + Sync + Send,
{
    use rayon::prelude::*;
    if threads <= 1 {
        return Ok(points.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::Error::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(|| points.par_iter().map(&f).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_points<F>(points: &[SimulationParams], _threads: usize, f: F) -> Result<Vec<Vec<ErrorRecord>>>
where
    F: Fn(&SimulationParams) -> Vec<ErrorRecord>,
{
    Ok(points.iter().map(f).collect())
}
