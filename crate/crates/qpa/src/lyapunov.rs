//! The monotone function certifying convergence, and its companion g.
//!
//! f(a, b) = (2a - 1)(1 - 2b) strictly increases under the map whenever
//! a > 0.5, which pins the trajectory to the |phi+> vertex where f peaks at
//! f(1, 0) = 1. The one-step increase condition reduces algebraically to
//! g(c, d) < 0 with
//!
//! ```text
//!   g(c, d) = 2(c+d)⁴ - 4(c+d)³ + 4(c+d)² - (c+d) - (c² + d²)
//! ```
//!
//! on {c, d ≥ 0, c + d < 0.5}; concretely, Δf = f(a,b) · (-2g) / p². The
//! negativity of g is certified numerically from its boundary values plus its
//! single interior critical point, located by solving the cubic
//! 8y³ - 12y² + 7y - 1 = 0 in y = c + d along the line x = c - d = 0.

use crate::float::{half, lit, two, Float};
use crate::map::qpa_step;
use crate::state::BellDiagonalState;
use crate::QpaError;

/// f(a, b) = (2a - 1)(1 - 2b). Depends only on the (a, b) pair; range [-1, 1].
#[inline]
pub fn f_value<T: Float>(state: &BellDiagonalState<T>) -> T {
    let one = T::one();
    let t = two::<T>();
    (t * state.a() - one) * (one - t * state.b())
}

/// g(c, d) as written above. Accepts any c, d ≥ 0.
#[inline]
pub fn g_value<T: Float>(c: T, d: T) -> T {
    let y = c + d;
    let y2 = y * y;
    let four = lit::<T>(4.0);
    two::<T>() * (y2 * y2) - four * (y2 * y) + four * y2 - y - (c * c + d * d)
}

/// One-step change of f together with the g that predicts its sign.
///
/// Returns (Δf, g(c, d)) where Δf = f(step output) - f(input). For a > 0.5
/// the two satisfy sign(Δf) = -sign(g) up to rounding.
pub fn monotonicity_delta<T: Float>(state: &BellDiagonalState<T>) -> (T, T) {
    let after = qpa_step(state).output;
    let delta = f_value(&after) - f_value(state);
    (delta, g_value(state.c(), state.d()))
}

/// 8y³ - 12y² + 7y - 1, the gradient-vanishing condition for g along c = d.
#[inline]
pub fn critical_cubic<T: Float>(y: T) -> T {
    let c8 = lit::<T>(8.0);
    let c12 = lit::<T>(12.0);
    let c7 = lit::<T>(7.0);
    ((c8 * y - c12) * y + c7) * y - T::one()
}

/// Derivative of the cubic: 24y² - 24y + 7.
#[inline]
fn critical_cubic_derivative<T: Float>(y: T) -> T {
    let c24 = lit::<T>(24.0);
    (c24 * y - c24) * y + lit::<T>(7.0)
}

/// Discriminant of the cubic's derivative, 24² - 4·24·7 = -96.
///
/// Negative, so the cubic is strictly increasing and has exactly one real
/// root: the uniqueness certificate for the critical point.
#[inline]
pub fn critical_cubic_derivative_discriminant<T: Float>() -> T {
    let c24 = lit::<T>(24.0);
    c24 * c24 - lit::<T>(4.0) * c24 * lit::<T>(7.0)
}

/// The interior critical point of g and the data certifying it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPointResult<T> {
    /// Root of the cubic: the value of y = c + d at the critical point.
    pub y0: T,
    /// Value of x = c - d there; the gradient in x vanishes only at x = 0,
    /// i.e. c = d.
    pub x0: T,
    /// g at the critical point (c = d = y0/2). Negative.
    pub g_min: T,
    /// Interval isolating the root.
    pub bracket: (T, T),
}

/// Locates the unique root of the cubic in (0, 0.5) by bisection with Newton
/// acceleration, refined until |cubic(y)| ≤ tol.
///
/// Fails only if the fixed coefficients were mangled (no sign change over the
/// bracket, nonnegative derivative discriminant) or if tol is below what f64
/// evaluation noise permits (~1e-15).
pub fn solve_critical_cubic<T: Float>(tol: T) -> Result<CriticalPointResult<T>, QpaError> {
    assert!(tol > T::zero(), "tolerance must be positive");
    let zero = T::zero();
    let mut lo = zero;
    let mut hi = half::<T>();
    if !(critical_cubic(lo) < zero && critical_cubic(hi) > zero) {
        return Err(QpaError::SolverFailure(
            "no sign change on (0, 0.5)".into(),
        ));
    }
    if critical_cubic_derivative_discriminant::<T>() >= zero {
        return Err(QpaError::SolverFailure(
            "derivative discriminant is nonnegative; root may not be unique".into(),
        ));
    }
    let bracket = (lo, hi);
    let mut y = half::<T>() * (lo + hi);
    let mut residual = critical_cubic(y);
    for _ in 0..256 {
        if residual.abs() <= tol {
            break;
        }
        if residual < zero {
            lo = y;
        } else {
            hi = y;
        }
        let newton = y - residual / critical_cubic_derivative(y);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            half::<T>() * (lo + hi)
        };
        if next == y {
            break;
        }
        y = next;
        residual = critical_cubic(y);
    }
    if residual.abs() > tol {
        return Err(QpaError::SolverFailure(format!(
            "residual {:?} did not reach tolerance {:?}",
            residual, tol
        )));
    }
    let h = half::<T>() * y;
    Ok(CriticalPointResult {
        y0: y,
        x0: zero,
        g_min: g_value(h, h),
        bracket,
    })
}

/// One evaluation point of the boundary scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample<T> {
    pub c: T,
    pub d: T,
    pub g: T,
}

/// Evaluates g at `samples` evenly spaced points on each of the three
/// boundary segments of {c, d ≥ 0, c + d ≤ 0.5}: the axis c = 0, the axis
/// d = 0, and the line c + d = 0.5.
///
/// g is negative everywhere on these segments except the corner c = d = 0 and
/// the midpoint c = d = 0.25, where it vanishes.
pub fn g_boundary_scan<T: Float>(samples: usize) -> Vec<BoundarySample<T>> {
    assert!(samples >= 2, "need at least the two segment endpoints");
    let h = half::<T>();
    let span = T::from_usize(samples - 1).expect("sample count fits scalar");
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let t = T::from_usize(i).unwrap() / span * h;
        out.push(BoundarySample {
            c: T::zero(),
            d: t,
            g: g_value(T::zero(), t),
        });
    }
    for i in 0..samples {
        let t = T::from_usize(i).unwrap() / span * h;
        out.push(BoundarySample {
            c: t,
            d: T::zero(),
            g: g_value(t, T::zero()),
        });
    }
    for i in 0..samples {
        let t = T::from_usize(i).unwrap() / span * h;
        let d = h - t;
        out.push(BoundarySample {
            c: t,
            d,
            g: g_value(t, d),
        });
    }
    out
}
