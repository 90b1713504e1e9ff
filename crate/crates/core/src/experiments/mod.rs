//! Error-scaling sweeps, the semi-empirical fit, slope diagnostics and the
//! observable-equivalence check.

pub mod fit;
pub mod io;
pub mod observables;
pub mod slopes;
pub mod sweep;

pub use fit::{fit_alpha_beta, fit_alpha_beta_points, fit_pf1_scale, fit_points, semi_empirical, FitPoint, FitResult};
pub use io::{read_records, write_records, CSV_HEADER};
pub use observables::{expectation_pair, observable_equivalence, InitialState};
pub use slopes::{slope_analysis, sweep_axis, windowed_slope, SlopeSegment};
pub use sweep::{log_grid, run_sweep, ErrorRecord, SweepKind, SweepSpec, DRIFT_LIMIT};
