//! Trotter error, its commutator bounds, and the quantities behind them.

use serde::{Deserialize, Serialize};

use crate::dense::{DenseOperator, Sectors};
use crate::error::{input, Result};
use crate::evolution::{Evolver, Order, Part, SimulationParams};
use crate::norms::{norm, NormKind};
use crate::pauli::{commutator, PauliSum};

/// Norm data for a two-part Hamiltonian and the coefficients derived from it.
///
/// `c1 = min(|H1|, |H2|)`, `c2 = |[H1,H2]| / 2` and
/// `c3 = (min(S) + max(S) / 2) / 12` with
/// `S = {|[H1,[H1,H2]]|, |[H2,[H2,H1]]|}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// `[|[H1,[H1,H2]]|, |[H2,[H2,H1]]|]`
    pub s: [f64; 2],
    pub norm_h1: f64,
    pub norm_h2: f64,
    pub norm_kind: NormKind,
    /// `|I|` in `norm_kind`.
    pub identity_norm: f64,
}

/// Empirical error next to every bound evaluated at one `(t, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBoundReport {
    pub empirical: f64,
    pub bound_pf1: f64,
    pub bound_main: f64,
    pub term_boundary: f64,
    pub term_bulk: f64,
    pub bound_pf2: f64,
    pub clamp: f64,
}

impl BoundCoefficients {
    pub fn from_norms(
        norm_h1: f64,
        norm_h2: f64,
        norm_comm: f64,
        s: [f64; 2],
        norm_kind: NormKind,
        identity_norm: f64,
    ) -> Self {
        let (lo, hi) = if s[0] <= s[1] { (s[0], s[1]) } else { (s[1], s[0]) };
        Self {
            c1: norm_h1.min(norm_h2),
            c2: 0.5 * norm_comm,
            c3: (lo + 0.5 * hi) / 12.0,
            s,
            norm_h1,
            norm_h2,
            norm_kind,
            identity_norm,
        }
    }

    /// Coefficients of the model with `H1` and `H2` exchanged.
    pub fn swapped(&self) -> Self {
        Self { s: [self.s[1], self.s[0]], norm_h1: self.norm_h2, norm_h2: self.norm_h1, ..*self }
    }

    /// `2 |I|`, the distance cap between two unitaries.
    pub fn clamp(&self) -> f64 {
        2.0 * self.identity_norm
    }

    /// Standard first-order bound `c2 t^2 / r`.
    pub fn bound_pf1(&self, t: f64, r: u64) -> f64 {
        self.c2 * t * t / r as f64
    }

    /// `c1 t / r`
    pub fn term_boundary(&self, t: f64, r: u64) -> f64 {
        self.c1 * t / r as f64
    }

    /// `c3 t^3 / r^2`
    pub fn term_bulk(&self, t: f64, r: u64) -> f64 {
        let r = r as f64;
        self.c3 * t * t * t / (r * r)
    }

    /// `min(c2 t^2/r, c1 t/r + c3 t^3/r^2, 2|I|)`.
    pub fn bound_main(&self, t: f64, r: u64) -> f64 {
        self.bound_pf1(t, r)
            .min(self.term_boundary(t, r) + self.term_bulk(t, r))
            .min(self.clamp())
    }

    /// Second-order bound for the given formula. The outer part `A` (H1 for
    /// [`Order::Second`], H2 for [`Order::SecondMirrored`]) enters as
    /// `(t^3 / 12 r^2) (|[B,[B,A]]| + |[A,[A,B]]| / 2)`.
    pub fn bound_pf2(&self, t: f64, r: u64, order: Order) -> f64 {
        let [s_a, s_b] = match order {
            Order::SecondMirrored => [self.s[1], self.s[0]],
            _ => self.s,
        };
        let r = r as f64;
        t * t * t / (12.0 * r * r) * (s_b + 0.5 * s_a)
    }

    /// `(t/r) min(|H1|, |H2|, (t/2) |[H1,H2]|)`, the bound on the
    /// boundary-layer commutator `|[e^{-iHt}, e^{-iH1 t/2r}]|`.
    pub fn boundary_term_bound(&self, t: f64, r: u64) -> f64 {
        t / r as f64 * self.norm_h1.min(self.norm_h2).min(t * self.c2)
    }

    pub fn report(&self, t: f64, r: u64, empirical: f64) -> ErrorBoundReport {
        ErrorBoundReport {
            empirical,
            bound_pf1: self.bound_pf1(t, r),
            bound_main: self.bound_main(t, r),
            term_boundary: self.term_boundary(t, r),
            term_bulk: self.term_bulk(t, r),
            bound_pf2: self.bound_pf2(t, r, Order::Second),
            clamp: self.clamp(),
        }
    }
}

pub fn bound_main(coeffs: &BoundCoefficients, t: f64, r: u64) -> f64 {
    coeffs.bound_main(t, r)
}

fn sum_norm(sum: &PauliSum, sectors: &std::sync::Arc<Sectors>, kind: NormKind) -> Result<f64> {
    if sum.is_empty() {
        return Ok(0.0);
    }
    norm(&DenseOperator::from_sum(sum, sectors)?, kind)
}

fn part_norm(evolver: &Evolver, part: Part, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::Spectral => {
            Ok(evolver.part_cache(part).spectrum().iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
        }
        NormKind::Frobenius => norm(evolver.part(part), kind),
    }
}

/// Nested commutators are formed symbolically and densified once.
pub fn coefficients(evolver: &Evolver, kind: NormKind) -> Result<BoundCoefficients> {
    let model = evolver.model();
    let sectors = evolver.sectors();
    let comm = commutator(&model.h1, &model.h2)?;
    let s_a = commutator(&model.h1, &comm)?;
    let s_b = commutator(&model.h2, &comm.scale(faer::c64::new(-1.0, 0.0)))?;
    Ok(BoundCoefficients::from_norms(
        part_norm(evolver, Part::H1, kind)?,
        part_norm(evolver, Part::H2, kind)?,
        sum_norm(&comm, sectors, kind)?,
        [sum_norm(&s_a, sectors, kind)?, sum_norm(&s_b, sectors, kind)?],
        kind,
        kind.identity_norm(evolver.dim()),
    ))
}

fn parts_sectors(parts: &[PauliSum]) -> Result<std::sync::Arc<Sectors>> {
    let first = parts.first().ok_or_else(|| input("need at least one part"))?;
    let refs: Vec<&PauliSum> = parts.iter().collect();
    Sectors::from_sums(first.n(), &refs)
}

/// `(t^2 / 2r) sum_j |sum_{k>j} [H_k, H_j]|` for an ordered list of parts.
pub fn bound_pf1_general(parts: &[PauliSum], t: f64, r: u64, kind: NormKind) -> Result<f64> {
    let sectors = parts_sectors(parts)?;
    let mut total = 0.0;
    for (j, hj) in parts.iter().enumerate() {
        let mut inner = PauliSum::zero(hj.n())?;
        for hk in &parts[j + 1..] {
            inner = inner.add(&commutator(hk, hj)?)?;
        }
        total += sum_norm(&inner, &sectors, kind)?;
    }
    Ok(t * t / (2.0 * r as f64) * total)
}

/// `(t^3 / 12 r^2) sum_j (|sum_{k,l>j} [H_l,[H_k,H_j]]| + |sum_{k>j} [H_j,[H_j,H_k]]| / 2)`.
pub fn bound_pf2_general(parts: &[PauliSum], t: f64, r: u64, kind: NormKind) -> Result<f64> {
    let sectors = parts_sectors(parts)?;
    let mut total = 0.0;
    for (j, hj) in parts.iter().enumerate() {
        let mut first = PauliSum::zero(hj.n())?;
        let mut second = PauliSum::zero(hj.n())?;
        for hk in &parts[j + 1..] {
            let ckj = commutator(hk, hj)?;
            for hl in &parts[j + 1..] {
                first = first.add(&commutator(hl, &ckj)?)?;
            }
            second = second.add(&commutator(hj, &commutator(hj, hk)?)?)?;
        }
        total += sum_norm(&first, &sectors, kind)? + 0.5 * sum_norm(&second, &sectors, kind)?;
    }
    let r = r as f64;
    Ok(t * t * t / (12.0 * r * r) * total)
}

/// `|e^{-iHt} - U|` for the chosen product formula.
pub fn empirical_error(evolver: &Evolver, params: SimulationParams, order: Order, kind: NormKind) -> Result<f64> {
    let diff = evolver.exact(params.t).sub(&evolver.pf_unitary(params, order));
    norm(&diff, kind)
}

/// Measured and bounded sizes of the boundary-layer commutator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KuboChain {
    /// `|[e^{-iHt}, e^{-iH1 t/2r}]|`
    pub measured: f64,
    /// `(t/2r) |[e^{-iHt}, H1]|`
    pub via_h1: f64,
    /// `(t/2r) |[e^{-iHt}, H2]|`, equal to `via_h1` since the two commutators
    /// differ only in sign
    pub via_h2: f64,
    /// [`BoundCoefficients::boundary_term_bound`]
    pub bound: f64,
}

pub fn kubo_chain(
    evolver: &Evolver,
    coeffs: &BoundCoefficients,
    params: SimulationParams,
    kind: NormKind,
) -> Result<KuboChain> {
    let u = evolver.exact(params.t);
    let half = evolver.part_propagator(Part::H1, params.dt() / 2.0);
    let scale = params.dt() / 2.0;
    Ok(KuboChain {
        measured: norm(&u.commutator(&half), kind)?,
        via_h1: scale * norm(&u.commutator(evolver.part(Part::H1)), kind)?,
        via_h2: scale * norm(&u.commutator(evolver.part(Part::H2)), kind)?,
        bound: coeffs.boundary_term_bound(params.t, params.r),
    })
}
