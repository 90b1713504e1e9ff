//! Product-formula (Trotter) simulation of two-part Hamiltonians
//! `H = H1 + H2` as exact dense unitaries.
//!
//! The crate measures the true first- and second-order product-formula error
//! and evaluates the commutator bounds on it, including
//! `min(c2 t^2/r, c1 t/r + c3 t^3/r^2, 2|I|)` for the first-order formula,
//! which rests on the exact identity
//! `U1 = e^{iH1 t/2r} U2 e^{-iH1 t/2r}`.
//!
//! Qubit 0 is the leftmost tensor factor (most significant basis bit)
//! throughout.

/// Version of this library, recorded in run metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod bounds;
pub mod dense;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod models;
pub mod norms;
pub mod pauli;

pub use bounds::{
    bound_main, bound_pf1_general, bound_pf2_general, coefficients, empirical_error, kubo_chain,
    BoundCoefficients, ErrorBoundReport, KuboChain,
};
pub use dense::{to_dense, DenseOperator, Sectors, MAX_DENSE_QUBITS};
pub use error::{Error, Result};
pub use evolution::{
    exact_propagator, matrix_power, ConjugationResidual, Evolver, Order, Part, PropagatorCache,
    SimulationParams,
};
pub use faer::c64;
pub use models::{
    chain_couplings, custom_model, heisenberg_1d, sample_disorder, tfim_1d, DisorderSpec, ModelConfig,
    TwoPartHamiltonian, RNG_IDENTIFIER,
};
pub use norms::{frobenius_norm, norm, spectral_norm, unitarity_drift, NormKind};
pub use pauli::{commutator, multiply_strings, Pauli, PauliString, PauliSum};
