//! Invariant suite run by `trotter verify`.

use serde::Serialize;
use trotter_core::experiments::{observable_equivalence, InitialState};
use trotter_core::{
    coefficients, empirical_error, kubo_chain, unitarity_drift, BoundCoefficients, Evolver, ModelConfig,
    NormKind, Order, Part, SimulationParams,
};

use crate::error::CliResult;

pub const SLACK: f64 = 1e-8;
pub const CONJUGATION_TOL: f64 = 1e-9;
pub const ANTISYMMETRY_TOL: f64 = 1e-10;
pub const OBSERVABLE_TOL: f64 = 1e-10;
pub const DRIFT_TOL: f64 = 1e-8;

pub const TIMES: [f64; 4] = [0.1, 1.0, 10.0, 100.0];
pub const STEPS: [u64; 4] = [1, 10, 100, 1000];

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub t: f64,
    pub r: u64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub inequality: &'static str,
    pub points: usize,
    /// Largest `lhs - rhs` seen; negative when every point passes.
    pub worst_margin: f64,
    pub violations: Vec<Violation>,
}

impl Check {
    fn new(name: &'static str, inequality: &'static str) -> Self {
        Self { name, inequality, points: 0, worst_margin: f64::NEG_INFINITY, violations: Vec::new() }
    }

    fn record(&mut self, p: SimulationParams, lhs: f64, rhs: f64) {
        self.points += 1;
        let margin = lhs - rhs;
        if margin > self.worst_margin || margin.is_nan() {
            self.worst_margin = margin;
        }
        if !(lhs <= rhs) {
            self.violations.push(Violation { t: p.t, r: p.r, lhs, rhs });
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub model: ModelConfig,
    pub norm: NormKind,
    pub coefficients: BoundCoefficients,
    pub max_empirical_pf1: f64,
    pub max_empirical_pf2: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Runs every check over the `TIMES x STEPS` grid. `c2_scale` multiplies C2
/// before any bound is evaluated; it exists only to exercise the failure
/// path.
pub fn run_suite(model_cfg: &ModelConfig, norm: NormKind, c2_scale: f64) -> CliResult<VerifyReport> {
    let model = model_cfg.build()?;
    let ev = Evolver::new(&model)?;
    let mut c = coefficients(&ev, norm)?;
    c.c2 *= c2_scale;

    let mut conj = Check::new("conjugation_residual", "||U1 - e^{iH1 dt/2} U2 e^{-iH1 dt/2}|| <= 1e-9 (and mirrored)");
    let mut pf1 = Check::new("bound_pf1", "empirical_pf1 <= C2 t^2/r + 1e-8");
    let mut main = Check::new("bound_main", "empirical_pf1 <= min(C2 t^2/r, C1 t/r + C3 t^3/r^2, 2|I|) + 1e-8");
    let mut pf2 = Check::new("bound_pf2", "empirical_pf2 <= bound_pf2 + 1e-8 (both assignments)");
    let mut kubo_lhs = Check::new("kubo_measured", "||[e^{-iHt}, e^{-iH1 dt/2}]|| <= (dt/2)||[e^{-iHt}, H1]|| + 1e-8");
    let mut kubo_rhs = Check::new("kubo_bound", "(dt/2)||[e^{-iHt}, H1]|| <= (t/r) min(|H1|, |H2|, (t/2)|[H1,H2]|) + 1e-8");
    let mut anti = Check::new("kubo_antisymmetry", "| ||[e^{-iHt}, H1]|| - ||[e^{-iHt}, H2]|| | (dt/2) <= 1e-10");
    let mut triangle = Check::new("triangle", "empirical_pf1 <= empirical_pf2 + ||[e^{-iHt}, e^{-iH1 dt/2}]|| + 1e-8");
    let mut drift = Check::new("unitarity_drift", "||U^dag U - I|| <= 1e-8");
    let mut obs = Check::new("observable_equivalence", "|<M>_U1 - <M>_U2| <= 1e-10 for eigenstates of a part, M = that part");

    let (mut max1, mut max2) = (0f64, 0f64);
    for &t in &TIMES {
        for &r in &STEPS {
            let p = SimulationParams::new(t, r)?;
            let res = ev.conjugation_residual(p, norm)?;
            conj.record(p, res.direct.max(res.mirrored), CONJUGATION_TOL);

            let e1 = empirical_error(&ev, p, Order::First, norm)?;
            let e2 = empirical_error(&ev, p, Order::Second, norm)?;
            let e2m = empirical_error(&ev, p, Order::SecondMirrored, norm)?;
            max1 = max1.max(e1);
            max2 = max2.max(e2).max(e2m);
            pf1.record(p, e1, c.bound_pf1(t, r) + SLACK);
            main.record(p, e1, c.bound_main(t, r) + SLACK);
            pf2.record(p, e2, c.bound_pf2(t, r, Order::Second) + SLACK);
            pf2.record(p, e2m, c.bound_pf2(t, r, Order::SecondMirrored) + SLACK);

            let k = kubo_chain(&ev, &c, p, norm)?;
            kubo_lhs.record(p, k.measured, k.via_h1 + SLACK);
            kubo_rhs.record(p, k.via_h1, k.bound + SLACK);
            anti.record(p, (k.via_h1 - k.via_h2).abs(), ANTISYMMETRY_TOL);
            triangle.record(p, e1, e2 + k.measured + SLACK);

            for order in [Order::First, Order::Second] {
                drift.record(p, unitarity_drift(&ev.pf_unitary(p, order))?, DRIFT_TOL);
            }
            for (part, sum) in [(Part::H1, &model.h1), (Part::H2, &model.h2)] {
                let (a, b) = observable_equivalence(&ev, part, InitialState::Eigenstate(0), sum, p)?;
                obs.record(p, (a - b).abs(), OBSERVABLE_TOL);
            }
        }
    }
    let checks = vec![conj, pf1, main, pf2, kubo_lhs, kubo_rhs, anti, triangle, drift, obs];
    let passed = checks.iter().all(Check::passed);
    Ok(VerifyReport {
        model: model_cfg.clone(),
        norm,
        coefficients: c,
        max_empirical_pf1: max1,
        max_empirical_pf2: max2,
        checks,
        passed,
    })
}

pub fn render(report: &VerifyReport) -> String {
    let mut out = String::new();
    let c = &report.coefficients;
    out.push_str(&format!(
        "model {} ({} norm): C1 = {:e}, C2 = {:e}, C3 = {:e}\n",
        serde_json::to_string(&report.model).unwrap_or_default(),
        report.norm.as_str(),
        c.c1,
        c.c2,
        c.c3
    ));
    out.push_str(&format!(
        "largest empirical error: PF1 {:e}, PF2 {:e}\n",
        report.max_empirical_pf1, report.max_empirical_pf2
    ));
    for check in &report.checks {
        if check.passed() {
            out.push_str(&format!(
                "PASS {:<24} {} points, worst margin {:e}\n",
                check.name, check.points, check.worst_margin
            ));
        } else {
            out.push_str(&format!(
                "FAIL {:<24} {} of {} points violate {}\n",
                check.name,
                check.violations.len(),
                check.points,
                check.inequality
            ));
            for v in check.violations.iter().take(5) {
                out.push_str(&format!("     at t = {}, r = {}: {:e} > {:e}\n", v.t, v.r, v.lhs, v.rhs));
            }
        }
    }
    out.push_str(if report.passed { "all checks passed\n" } else { "verification FAILED\n" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chain_passes() {
        let m = ModelConfig::Heisenberg1d { n: 3, seed: Some(1), h: None };
        let rep = run_suite(&m, NormKind::Spectral, 1.0).unwrap();
        assert!(rep.passed, "{}", render(&rep));
    }

    #[test]
    fn shrunken_c2_is_caught() {
        let m = ModelConfig::Heisenberg1d { n: 3, seed: Some(1), h: None };
        let rep = run_suite(&m, NormKind::Spectral, 1e-3).unwrap();
        assert!(!rep.passed);
        let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failed.contains(&"bound_pf1"), "{failed:?}");
    }
}
