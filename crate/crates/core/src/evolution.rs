//! Exact propagators and product-formula unitaries.
//!
//! Every exponential is taken through a cached Hermitian eigendecomposition,
//! `exp(-iHt) = V exp(-iΛt) V^†`, and the r-fold repetition of a timestep is
//! formed by binary powering.

use std::sync::Arc;

use faer::{c64, Mat, Side};
use serde::{Deserialize, Serialize};

use crate::dense::{DenseOperator, Sectors};
use crate::error::{input, Error, Result};
use crate::models::TwoPartHamiltonian;
use crate::norms::{norm, NormKind};
use crate::pauli::PauliSum;

/// Hermiticity tolerance for propagator sources.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigendecomposition `H = V Λ V^†`, block by block.
#[derive(Debug, Clone)]
pub struct PropagatorCache {
    sectors: Arc<Sectors>,
    eigenvalues: Vec<Vec<f64>>,
    eigenvectors: Vec<Mat<c64>>,
    source: String,
}

impl PropagatorCache {
    pub fn new(h: &DenseOperator, source: impl Into<String>) -> Result<Self> {
        let source = source.into();
        if !h.is_hermitian(HERMITIAN_TOL) {
            return Err(input(format!(
                "{source} is not Hermitian (defect {:e})",
                h.hermiticity_defect()
            )));
        }
        let mut eigenvalues = Vec::with_capacity(h.blocks().len());
        let mut eigenvectors = Vec::with_capacity(h.blocks().len());
        for b in h.blocks() {
            let evd = b
                .self_adjoint_eigen(Side::Lower)
                .map_err(|e| Error::Numerical(format!("eigendecomposition of {source}: {e:?}")))?;
            let s = evd.S().column_vector();
            eigenvalues.push((0..b.nrows()).map(|k| s[k].re).collect());
            eigenvectors.push(evd.U().to_owned());
        }
        Ok(Self { sectors: h.sectors().clone(), eigenvalues, eigenvectors, source })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn sectors(&self) -> &Arc<Sectors> {
        &self.sectors
    }

    /// `V f(Λ) V^†` for a scalar function of the eigenvalues.
    pub fn apply_function(&self, f: impl Fn(f64) -> c64) -> DenseOperator {
        let blocks = self
            .eigenvectors
            .iter()
            .zip(&self.eigenvalues)
            .map(|(v, lam)| {
                let weights: Vec<c64> = lam.iter().map(|&x| f(x)).collect();
                let scaled = Mat::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)] * weights[j]);
                &scaled * v.adjoint()
            })
            .collect();
        DenseOperator::from_blocks(self.sectors.clone(), blocks)
    }

    /// `exp(-i H t)`.
    pub fn propagator(&self, t: f64) -> DenseOperator {
        self.apply_function(|x| {
            let (s, c) = (x * t).sin_cos();
            c64::new(c, -s)
        })
    }

    /// Source matrix rebuilt from the decomposition.
    pub fn reconstruct(&self) -> DenseOperator {
        self.apply_function(|x| c64::new(x, 0.0))
    }

    /// All eigenvalues in nondecreasing order.
    pub fn spectrum(&self) -> Vec<f64> {
        self.ordered().into_iter().map(|(x, _, _)| x).collect()
    }

    fn ordered(&self) -> Vec<(f64, usize, usize)> {
        let mut all: Vec<(f64, usize, usize)> = self
            .eigenvalues
            .iter()
            .enumerate()
            .flat_map(|(b, lam)| lam.iter().enumerate().map(move |(k, &x)| (x, b, k)))
            .collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        all
    }

    /// The `index`-th eigenpair in nondecreasing eigenvalue order, with the
    /// eigenvector expanded to a full state vector.
    pub fn eigenstate(&self, index: usize) -> Option<(f64, Vec<c64>)> {
        let (x, b, k) = *self.ordered().get(index)?;
        let mut state = vec![c64::new(0.0, 0.0); self.sectors.dim()];
        let v = &self.eigenvectors[b];
        for (i, &row) in self.sectors.block(b).iter().enumerate() {
            state[row] = v[(i, k)];
        }
        Some((x, state))
    }
}

/// `exp(-i h t)` for a Hermitian operator.
pub fn exact_propagator(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    Ok(PropagatorCache::new(h, "operator")?.propagator(t))
}

/// `u^r` by repeated squaring; `r = 0` gives the identity.
pub fn matrix_power(u: &DenseOperator, r: u64) -> DenseOperator {
    let mut acc: Option<DenseOperator> = None;
    let mut base = u.clone();
    let mut e = r;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc.unwrap_or_else(|| DenseOperator::identity(u.sectors()))
}

/// Total time and timestep count; the timestep is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationParams {
    pub t: f64,
    pub r: u64,
}

impl SimulationParams {
    pub fn new(t: f64, r: u64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(input(format!("total time must be finite and >= 0, got {t}")));
        }
        if r == 0 {
            return Err(input("timestep count r must be >= 1"));
        }
        Ok(Self { t, r })
    }

    pub fn dt(&self) -> f64 {
        self.t / self.r as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    /// `(e^{-iH2 dt} e^{-iH1 dt})^r`
    #[serde(rename = "1")]
    First,
    /// `(e^{-iH1 dt/2} e^{-iH2 dt} e^{-iH1 dt/2})^r`
    #[serde(rename = "2")]
    Second,
    /// `(e^{-iH2 dt/2} e^{-iH1 dt} e^{-iH2 dt/2})^r`
    #[serde(rename = "2m")]
    SecondMirrored,
}

impl Order {
    pub fn label(&self) -> &'static str {
        match self {
            Order::First => "1",
            Order::Second => "2",
            Order::SecondMirrored => "2m",
        }
    }
}

impl std::str::FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Order::First),
            "2" => Ok(Order::Second),
            "2m" => Ok(Order::SecondMirrored),
            _ => Err(input(format!("unknown product-formula order {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    H1,
    H2,
}

/// `U1` against its conjugated second-order partners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugationResidual {
    /// `||U1 - e^{iH1 dt/2} U2 e^{-iH1 dt/2}||`
    pub direct: f64,
    /// `||Ũ2 - e^{iH2 dt/2} U1 e^{-iH2 dt/2}||`
    pub mirrored: f64,
}

/// Dense parts of a two-part Hamiltonian with one eigendecomposition each
/// for H1, H2 and H. Immutable after construction and shareable across
/// threads.
#[derive(Debug, Clone)]
pub struct Evolver {
    model: TwoPartHamiltonian,
    sectors: Arc<Sectors>,
    h1: DenseOperator,
    h2: DenseOperator,
    h: DenseOperator,
    cache1: PropagatorCache,
    cache2: PropagatorCache,
    cache: PropagatorCache,
}

impl Evolver {
    pub fn new(model: &TwoPartHamiltonian) -> Result<Self> {
        let n = model.n();
        let sectors = Sectors::from_sums(n, &[&model.h1, &model.h2])?;
        let h1 = DenseOperator::from_sum(&model.h1, &sectors)?;
        let h2 = DenseOperator::from_sum(&model.h2, &sectors)?;
        let h = h1.add(&h2);
        let cache1 = PropagatorCache::new(&h1, "H1")?;
        let cache2 = PropagatorCache::new(&h2, "H2")?;
        let cache = PropagatorCache::new(&h, "H")?;
        Ok(Self { model: model.clone(), sectors, h1, h2, h, cache1, cache2, cache })
    }

    pub fn model(&self) -> &TwoPartHamiltonian {
        &self.model
    }

    pub fn sectors(&self) -> &Arc<Sectors> {
        &self.sectors
    }

    pub fn dim(&self) -> usize {
        self.sectors.dim()
    }

    pub fn part(&self, part: Part) -> &DenseOperator {
        match part {
            Part::H1 => &self.h1,
            Part::H2 => &self.h2,
        }
    }

    pub fn hamiltonian(&self) -> &DenseOperator {
        &self.h
    }

    pub fn part_cache(&self, part: Part) -> &PropagatorCache {
        match part {
            Part::H1 => &self.cache1,
            Part::H2 => &self.cache2,
        }
    }

    /// Densifies an arbitrary sum in this model's sector layout.
    pub fn densify(&self, sum: &PauliSum) -> Result<DenseOperator> {
        DenseOperator::from_sum(sum, &self.sectors)
    }

    /// `exp(-iHt)`.
    pub fn exact(&self, t: f64) -> DenseOperator {
        self.cache.propagator(t)
    }

    /// `exp(-i H_part dt)`.
    pub fn part_propagator(&self, part: Part, dt: f64) -> DenseOperator {
        self.part_cache(part).propagator(dt)
    }

    /// `e^{-iH2 dt} e^{-iH1 dt}`: H1 acts first.
    pub fn pf1_step(&self, dt: f64) -> DenseOperator {
        self.part_propagator(Part::H2, dt).mul(&self.part_propagator(Part::H1, dt))
    }

    /// `e^{-iA dt/2} e^{-iB dt} e^{-iA dt/2}` with `A = H1` (or `A = H2`
    /// when mirrored).
    pub fn pf2_step(&self, dt: f64, mirrored: bool) -> DenseOperator {
        let (outer, inner) = if mirrored { (Part::H2, Part::H1) } else { (Part::H1, Part::H2) };
        let half = self.part_propagator(outer, dt / 2.0);
        half.mul(&self.part_propagator(inner, dt)).mul(&half)
    }

    pub fn step(&self, order: Order, dt: f64) -> DenseOperator {
        match order {
            Order::First => self.pf1_step(dt),
            Order::Second => self.pf2_step(dt, false),
            Order::SecondMirrored => self.pf2_step(dt, true),
        }
    }

    pub fn pf_unitary(&self, params: SimulationParams, order: Order) -> DenseOperator {
        matrix_power(&self.step(order, params.dt()), params.r)
    }

    pub fn conjugation_residual(&self, params: SimulationParams, kind: NormKind) -> Result<ConjugationResidual> {
        let half = params.dt() / 2.0;
        let u1 = self.pf_unitary(params, Order::First);
        let u2 = self.pf_unitary(params, Order::Second);
        let u2m = self.pf_unitary(params, Order::SecondMirrored);

        // e^{+iH dt/2} is the propagator at time -dt/2
        let a = self.part_propagator(Part::H1, -half);
        let direct = norm(&u1.sub(&a.mul(&u2).mul(&a.adjoint())), kind)?;
        let b = self.part_propagator(Part::H2, -half);
        let mirrored = norm(&u2m.sub(&b.mul(&u1).mul(&b.adjoint())), kind)?;
        Ok(ConjugationResidual { direct, mirrored })
    }
}

/// Product of `factors` with the first entry acting first, i.e.
/// `factors[L-1] ··· factors[0]`.
pub fn ordered_product(factors: &[DenseOperator]) -> Option<DenseOperator> {
    let mut it = factors.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, f| f.mul(&acc)))
}

/// Exact propagator and product-formula unitary for an arbitrary ordered
/// list of Hermitian parts, `(e^{-iH_L dt} ··· e^{-iH_1 dt})^r` for first
/// order and the symmetric sweep `(H_1 .. H_L)(H_L .. H_1)` with half steps
/// for second order.
pub fn multi_part_unitaries(
    parts: &[PauliSum],
    params: SimulationParams,
    second_order: bool,
) -> Result<(DenseOperator, DenseOperator)> {
    let first = parts.first().ok_or_else(|| input("need at least one part"))?;
    let refs: Vec<&PauliSum> = parts.iter().collect();
    let sectors = Sectors::from_sums(first.n(), &refs)?;
    let dense = parts
        .iter()
        .map(|p| DenseOperator::from_sum(p, &sectors))
        .collect::<Result<Vec<_>>>()?;
    let caches = dense
        .iter()
        .enumerate()
        .map(|(k, d)| PropagatorCache::new(d, format!("H{}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    let total = dense.iter().skip(1).fold(dense[0].clone(), |acc, d| acc.add(d));
    let exact = PropagatorCache::new(&total, "H")?.propagator(params.t);

    let dt = params.dt();
    let step = if second_order {
        let halves: Vec<DenseOperator> = caches.iter().map(|c| c.propagator(dt / 2.0)).collect();
        // H_1 .. H_L act first, then H_L .. H_1
        let mut seq = halves.clone();
        seq.extend(halves.iter().rev().cloned());
        ordered_product(&seq).expect("nonempty")
    } else {
        let steps: Vec<DenseOperator> = caches.iter().map(|c| c.propagator(dt)).collect();
        ordered_product(&steps).expect("nonempty")
    };
    Ok((exact, matrix_power(&step, params.r)))
}
