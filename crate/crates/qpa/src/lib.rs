//! Dynamics of the two-pair entanglement purification recurrence (the QPA /
//! DEJMPS step) on Bell-diagonal states, together with the numerical
//! machinery that certifies its convergence:
//!
//! - [`state`]: validated Bell-diagonal states, region classification, and
//!   the a<->c, b<->d symmetry;
//! - [`map`]: one purification step, its success probability, and the two
//!   closed-form identities the basin analysis rests on;
//! - [`lyapunov`]: the monotone function f, its companion g, and the cubic
//!   locating g's interior critical point;
//! - [`dynamics`]: trajectories, attractor classification, fixed-point
//!   census;
//! - [`sweep`]: exhaustive grid classification of the whole simplex;
//! - [`sample`] / [`verify`]: seeded property suites with reported margins.
//!
//! Everything numeric is generic over the scalar via [`Float`]; use the
//! `f64` aliases below unless you need otherwise.

use thiserror::Error;

pub mod dynamics;
pub mod float;
pub mod lyapunov;
pub mod map;
pub mod sample;
pub mod state;
pub mod sweep;
pub mod verify;

pub use dynamics::{
    classify_convergence, find_fixed_points, iterate, Attractor, ConvergenceReport,
    IterationOptions, Termination, Trajectory,
};
pub use float::Float;
pub use lyapunov::{
    critical_cubic, critical_cubic_derivative_discriminant, f_value, g_boundary_scan, g_value,
    monotonicity_delta, solve_critical_cubic, BoundarySample, CriticalPointResult,
};
pub use map::{identity_residuals, qpa_step, success_probability, StepOutcome};
pub use sample::SimplexSampler;
pub use state::{BellDiagonalState, BellIndex, RegionClass};
pub use sweep::{predicted_attractor, run_sweep, simplex_grid, SweepCell, SweepReport};

/// `f32` state alias.
pub type State32 = BellDiagonalState<f32>;
/// `f64` state alias; the default working type.
pub type State64 = BellDiagonalState<f64>;
/// `f64` trajectory alias.
pub type Trajectory64 = Trajectory<f64>;
/// `f64` sweep report alias.
pub type SweepReport64 = SweepReport<f64>;

#[derive(Debug, Error)]
pub enum QpaError {
    /// Input weights do not form a Bell-diagonal state.
    #[error("rejected state: {0}")]
    RejectedState(String),
    /// Grid step is not the reciprocal of a positive integer.
    #[error("rejected step: {0}")]
    RejectedStep(String),
    /// Root solver could not certify or refine the root.
    #[error("solver failure: {0}")]
    SolverFailure(String),
}
