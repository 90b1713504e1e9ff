//! Expectation values under first- and second-order formulas.
//!
//! When the initial state is an eigenstate of one part and the observable
//! commutes with that part, the boundary layers that separate the first-order
//! formula from its second-order partner act as phases and drop out.

use faer::c64;

use crate::dense::{inner, DenseOperator};
use crate::error::{input, Result};
use crate::evolution::{Evolver, Order, Part, SimulationParams};
use crate::pauli::{commutator, PauliSum};

/// Tolerance for the eigenstate and reality checks.
pub const OBSERVABLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// Eigenvector of the chosen part, by position in its sorted spectrum.
    Eigenstate(usize),
    /// Computational basis state; must be an eigenstate of the chosen part.
    Basis(usize),
}

fn expectation(u: &DenseOperator, m: &DenseOperator, psi: &[c64]) -> c64 {
    let phi = u.apply(psi);
    inner(&phi, &m.apply(&phi))
}

/// `(<psi|U1^† M U1|psi>, <psi|V^† M V|psi>)` with `V = U2` for part 1 and
/// `V = Ũ2` for part 2. No preconditions are checked.
pub fn expectation_pair(
    evolver: &Evolver,
    part: Part,
    psi: &[c64],
    observable: &DenseOperator,
    params: SimulationParams,
) -> Result<(c64, c64)> {
    if psi.len() != evolver.dim() {
        return Err(input(format!("state has length {}, expected {}", psi.len(), evolver.dim())));
    }
    let partner = match part {
        Part::H1 => Order::Second,
        Part::H2 => Order::SecondMirrored,
    };
    let u1 = evolver.pf_unitary(params, Order::First);
    let u2 = evolver.pf_unitary(params, partner);
    Ok((expectation(&u1, observable, psi), expectation(&u2, observable, psi)))
}

fn part_sum(evolver: &Evolver, part: Part) -> &PauliSum {
    match part {
        Part::H1 => &evolver.model().h1,
        Part::H2 => &evolver.model().h2,
    }
}

fn initial_state(evolver: &Evolver, part: Part, state: InitialState) -> Result<Vec<c64>> {
    match state {
        InitialState::Eigenstate(k) => evolver
            .part_cache(part)
            .eigenstate(k)
            .map(|(_, v)| v)
            .ok_or_else(|| input(format!("eigenstate index {k} out of range"))),
        InitialState::Basis(k) => {
            if k >= evolver.dim() {
                return Err(input(format!("basis index {k} out of range")));
            }
            let mut psi = vec![c64::new(0.0, 0.0); evolver.dim()];
            psi[k] = c64::new(1.0, 0.0);
            let h_psi = evolver.part(part).apply(&psi);
            let energy = h_psi[k];
            let defect = h_psi
                .iter()
                .zip(&psi)
                .map(|(a, b)| (a - energy * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if defect > OBSERVABLE_TOL {
                return Err(input(format!(
                    "basis state {k} is not an eigenstate of {part:?} (residual {defect:e})"
                )));
            }
            Ok(psi)
        }
    }
}

/// Expectation of `observable` after the first-order formula and after its
/// second-order partner, starting from an eigenstate of `part`.
pub fn observable_equivalence(
    evolver: &Evolver,
    part: Part,
    state: InitialState,
    observable: &PauliSum,
    params: SimulationParams,
) -> Result<(f64, f64)> {
    if !observable.is_hermitian() {
        return Err(input("observable must have real coefficients"));
    }
    if !commutator(observable, part_sum(evolver, part))?.is_empty() {
        return Err(input(format!("observable does not commute with {part:?}")));
    }
    let psi = initial_state(evolver, part, state)?;
    let m = evolver.densify(observable)?;
    let (a, b) = expectation_pair(evolver, part, &psi, &m, params)?;
    if a.im.abs() > OBSERVABLE_TOL || b.im.abs() > OBSERVABLE_TOL {
        return Err(crate::Error::Numerical(format!(
            "expectation values are not real: {a}, {b}"
        )));
    }
    Ok((a.re, b.re))
}
