//! Local log-log slopes of an error curve along one sweep axis.

use serde::{Deserialize, Serialize};

use super::sweep::{ErrorRecord, SweepKind};
use crate::error::{input, Result};
use crate::evolution::Order;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeSegment {
    pub x0: f64,
    pub x1: f64,
    pub slope: f64,
}

/// `(free variable, empirical error)` pairs of the first-order records.
pub fn sweep_axis(records: &[ErrorRecord], kind: SweepKind) -> Vec<(f64, f64)> {
    records
        .iter()
        .filter(|r| r.order == Order::First)
        .map(|r| {
            let x = match kind {
                SweepKind::FixedT => r.r as f64,
                _ => r.t,
            };
            (x, r.empirical)
        })
        .collect()
}

fn check_curve(points: &[(f64, f64)], min_len: usize) -> Result<()> {
    if points.len() < min_len {
        return Err(input(format!("need at least {min_len} points, got {}", points.len())));
    }
    if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(input("sweep axis is not strictly increasing"));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(input("log-log slopes need positive coordinates"));
    }
    Ok(())
}

/// Finite-difference slopes of `log10 y` against `log10 x` between
/// consecutive points.
pub fn slope_analysis(points: &[(f64, f64)]) -> Result<Vec<SlopeSegment>> {
    check_curve(points, 3)?;
    Ok(points
        .windows(2)
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            SlopeSegment { x0, x1, slope: (y1.log10() - y0.log10()) / (x1.log10() - x0.log10()) }
        })
        .collect())
}

/// Least-squares log-log slope over the points with `lo <= x <= hi`.
pub fn windowed_slope(points: &[(f64, f64)], lo: f64, hi: f64) -> Option<f64> {
    let sel: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x >= lo && x <= hi && x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.log10(), y.log10()))
        .collect();
    if sel.len() < 2 {
        return None;
    }
    let n = sel.len() as f64;
    let mx = sel.iter().map(|p| p.0).sum::<f64>() / n;
    let my = sel.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = sel.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = sel.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_power_law() {
        let pts: Vec<(f64, f64)> = (0..10).map(|k| {
            let r = 10f64.powf(2.0 + k as f64 / 3.0);
            (r, 7.0 * r.powi(-2))
        }).collect();
        for s in slope_analysis(&pts).unwrap() {
            assert!((s.slope + 2.0).abs() < 1e-6);
        }
        assert!((windowed_slope(&pts, 100.0, 1e4).unwrap() + 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(slope_analysis(&[(1.0, 1.0), (2.0, 1.0)]).is_err());
        assert!(slope_analysis(&[(1.0, 1.0), (3.0, 1.0), (2.0, 1.0)]).is_err());
        assert!(slope_analysis(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(windowed_slope(&[(1.0, 1.0)], 0.0, 10.0).is_none());
    }
}
