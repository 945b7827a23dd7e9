//! Iterating the map: trajectories, attractor classification, and a brute
//! force fixed-point census.

use rayon::prelude::*;

use crate::float::{half, lit, Float};
use crate::lyapunov::f_value;
use crate::map::qpa_step;
use crate::state::BellDiagonalState;
use crate::sweep::simplex_grid;
use crate::QpaError;

/// Two successive states closer than this per component count as a fixed
/// point; keeps the iteration from spinning forever on the uniform state and
/// the boundary fixed points.
pub const FIXED_POINT_DETECT: f64 = 1e-16;

/// Knobs for [`iterate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationOptions<T> {
    /// Convergence threshold on 1 - max(a, c); one criterion serves both
    /// vertex attractors. Must lie in (0, 0.5).
    pub epsilon: T,
    /// Hard stop; hitting it is reported, not an error. Must be ≥ 1.
    pub max_iters: usize,
    /// Record every intermediate state, or just the first and last.
    pub record_full: bool,
}

impl<T: Float> Default for IterationOptions<T> {
    fn default() -> Self {
        Self {
            epsilon: lit::<T>(1e-9),
            max_iters: 10_000,
            record_full: true,
        }
    }
}

impl<T: Float> IterationOptions<T> {
    fn assert_valid(&self) {
        assert!(
            self.epsilon > T::zero() && self.epsilon < half::<T>(),
            "epsilon must lie in (0, 0.5)"
        );
        assert!(self.max_iters >= 1, "max_iters must be at least 1");
    }
}

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Termination {
    /// 1 - max(a, c) fell to epsilon or below.
    Converged,
    /// Successive states agreed to within [`FIXED_POINT_DETECT`].
    FixedPointDetected,
    MaxItersReached,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Converged => "Converged",
            Termination::FixedPointDetected => "FixedPointDetected",
            Termination::MaxItersReached => "MaxItersReached",
        }
    }
}

/// Attractor reached by a trajectory, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attractor {
    /// Final a within epsilon of 1.
    PhiPlus,
    /// Final c within epsilon of 1.
    PsiPlus,
    /// Stalled on the uniform state (0.25, 0.25, 0.25, 0.25).
    WernerFixedPoint,
    None,
}

impl Attractor {
    pub fn as_str(self) -> &'static str {
        match self {
            Attractor::PhiPlus => "PhiPlus",
            Attractor::PsiPlus => "PsiPlus",
            Attractor::WernerFixedPoint => "WernerFixedPoint",
            Attractor::None => "None",
        }
    }
}

/// A run of the map from one initial state.
///
/// With `record_full` the vectors hold the whole history: `states[k+1]` is
/// the step output of `states[k]`, `p_values[k]` is the success probability
/// of that step, and `f_values` / `cumulative_yield` align with `states`.
/// Without it only the first and last states (and their f and yield values)
/// are kept and `p_values` stays empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub states: Vec<BellDiagonalState<T>>,
    pub p_values: Vec<T>,
    pub f_values: Vec<T>,
    /// Running product of p/2 per step: the expected surviving-pair fraction,
    /// since a step consumes two pairs and keeps at most one. Starts at 1.
    pub cumulative_yield: Vec<T>,
    /// Number of steps actually taken (independent of recording).
    pub iterations: usize,
    pub terminated: Termination,
    /// Largest component seen at any iterate, recorded or not.
    pub peak_component: T,
}

impl<T: Float> Trajectory<T> {
    pub fn initial(&self) -> &BellDiagonalState<T> {
        self.states.first().expect("trajectory holds initial state")
    }

    pub fn final_state(&self) -> &BellDiagonalState<T> {
        self.states.last().expect("trajectory holds final state")
    }
}

/// Attractor classification of a single initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport<T> {
    pub initial: BellDiagonalState<T>,
    pub attractor: Attractor,
    pub iterations: usize,
    pub final_state: BellDiagonalState<T>,
    pub terminated: Termination,
    /// Fidelity to the attractor vertex when purified, otherwise the final
    /// max component.
    pub final_fidelity: T,
    pub peak_component: T,
}

/// Applies the step until the state converges (1 - max(a, c) ≤ epsilon),
/// stalls on a fixed point, or runs out of iterations — checked in that
/// order of precedence.
///
/// Convergence watches only the two attractor slots: a state dominated by b
/// or d is one step away from its vertex, not at it, so it keeps iterating.
///
/// Panics if the options are invalid; non-convergence is a reported outcome,
/// not an error.
pub fn iterate<T: Float>(
    initial: BellDiagonalState<T>,
    opts: &IterationOptions<T>,
) -> Trajectory<T> {
    opts.assert_valid();
    let one = T::one();
    let detect = lit::<T>(FIXED_POINT_DETECT);

    let mut states = vec![initial];
    let mut p_values = Vec::new();
    let mut f_values = vec![f_value(&initial)];
    let mut cumulative_yield = vec![one];
    let mut yield_acc = one;
    let mut peak = initial.max_component();
    let mut current = initial;
    let mut previous: Option<BellDiagonalState<T>> = None;
    let mut iterations = 0usize;

    let terminated = loop {
        if one - current.a().max(current.c()) <= opts.epsilon {
            break Termination::Converged;
        }
        if let Some(prev) = &previous {
            if prev.max_abs_diff(&current) < detect {
                break Termination::FixedPointDetected;
            }
        }
        if iterations >= opts.max_iters {
            break Termination::MaxItersReached;
        }
        let outcome = qpa_step(&current);
        iterations += 1;
        yield_acc = yield_acc * (outcome.p * half::<T>());
        peak = peak.max(outcome.output.max_component());
        if opts.record_full {
            states.push(outcome.output);
            p_values.push(outcome.p);
            f_values.push(f_value(&outcome.output));
            cumulative_yield.push(yield_acc);
        }
        previous = Some(current);
        current = outcome.output;
    };

    if !opts.record_full && iterations > 0 {
        states.push(current);
        f_values.push(f_value(&current));
        cumulative_yield.push(yield_acc);
    }

    Trajectory {
        states,
        p_values,
        f_values,
        cumulative_yield,
        iterations,
        terminated,
        peak_component: peak,
    }
}

fn is_uniform<T: Float>(state: &BellDiagonalState<T>, tol: T) -> bool {
    let q = lit::<T>(0.25);
    state.components().iter().all(|x| (*x - q).abs() <= tol)
}

/// Runs [`iterate`] and labels the attractor: `PhiPlus` when the final a is
/// within epsilon of 1, `PsiPlus` when c is, `WernerFixedPoint` when the run
/// stalled on the uniform state, `None` otherwise.
pub fn classify_convergence<T: Float>(
    initial: BellDiagonalState<T>,
    opts: &IterationOptions<T>,
) -> ConvergenceReport<T> {
    let traj = iterate(initial, opts);
    let final_state = *traj.final_state();
    let one = T::one();
    let attractor = if final_state.a() >= one - opts.epsilon {
        Attractor::PhiPlus
    } else if final_state.c() >= one - opts.epsilon {
        Attractor::PsiPlus
    } else if traj.terminated == Termination::FixedPointDetected
        && is_uniform(&final_state, opts.epsilon)
    {
        Attractor::WernerFixedPoint
    } else {
        Attractor::None
    };
    let final_fidelity = match attractor {
        Attractor::PhiPlus => final_state.a(),
        Attractor::PsiPlus => final_state.c(),
        _ => final_state.max_component(),
    };
    ConvergenceReport {
        initial,
        attractor,
        iterations: traj.iterations,
        final_state,
        terminated: traj.terminated,
        final_fidelity,
        peak_component: traj.peak_component,
    }
}

/// Scans the simplex grid for states the step maps to themselves within
/// `tol` per component. Results come back in grid enumeration order,
/// deduplicated so that no two reported states are within half a grid step
/// of each other.
///
/// Useful grid steps are 1/n ≤ 0.25; coarser grids miss the interior fixed
/// points.
pub fn find_fixed_points<T: Float>(
    grid_step: T,
    tol: T,
) -> Result<Vec<BellDiagonalState<T>>, QpaError> {
    assert!(tol > T::zero(), "tolerance must be positive");
    let grid = simplex_grid(grid_step)?;
    let hits: Vec<BellDiagonalState<T>> = grid
        .par_iter()
        .filter(|s| qpa_step(s).output.max_abs_diff(s) <= tol)
        .copied()
        .collect();
    let merge = grid_step * half::<T>();
    let mut out: Vec<BellDiagonalState<T>> = Vec::new();
    for s in hits {
        if out.iter().all(|kept| kept.max_abs_diff(&s) > merge) {
            out.push(s);
        }
    }
    Ok(out)
}
