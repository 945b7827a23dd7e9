//! One elementary step of the two-pair purification recurrence.
//!
//! With input weights (a, b, c, d) and p = (a+b)² + (c+d)², the surviving
//! pair has weights
//!
//! ```text
//!   A = (a² + b²)/p    B = 2cd/p    C = (c² + d²)/p    D = 2ab/p
//! ```
//!
//! A + B + C + D = 1 holds identically, so p is both the success probability
//! of the step and the normalizer of the output.

use crate::float::{lit, two, Float};
use crate::state::BellDiagonalState;

/// Result of one step: the surviving pair's state and the success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome<T> {
    pub output: BellDiagonalState<T>,
    /// In [0.5, 1]: x² + (1-x)² over x = a+b is minimized at 0.5.
    pub p: T,
}

/// p = (a+b)² + (c+d)².
#[inline]
pub fn success_probability<T: Float>(state: &BellDiagonalState<T>) -> T {
    let u = state.a() + state.b();
    let y = state.c() + state.d();
    u * u + y * y
}

/// Raw step output before renormalization, plus p.
///
/// Sums are grouped (a,b) with (c,d) throughout so a swapped input sees
/// bit-identical arithmetic; the step then commutes exactly with
/// [`swap_symmetry`](BellDiagonalState::swap_symmetry) in floating point.
#[inline]
fn step_raw<T: Float>(state: &BellDiagonalState<T>) -> ([T; 4], T) {
    let [a, b, c, d] = state.components();
    let p = success_probability(state);
    let big_a = (a * a + b * b) / p;
    let big_b = two::<T>() * c * d / p;
    let big_c = (c * c + d * d) / p;
    let big_d = two::<T>() * a * b / p;
    ([big_a, big_b, big_c, big_d], p)
}

/// Applies one step and renormalizes the output by its computed sum.
///
/// The sum is 1 exactly in real arithmetic; the division only absorbs the
/// ~1 ulp of rounding per step so that long trajectories stay on the simplex.
pub fn qpa_step<T: Float>(state: &BellDiagonalState<T>) -> StepOutcome<T> {
    let (mut out, p) = step_raw(state);
    debug_assert!(p > lit::<T>(0.4999) && p <= T::one() + lit::<T>(1e-12));
    let sum = (out[0] + out[1]) + (out[2] + out[3]);
    if sum != T::one() {
        for x in &mut out {
            *x = *x / sum;
        }
    }
    StepOutcome {
        output: BellDiagonalState::from_normalized(out),
        p,
    }
}

/// Floating-point residuals of the two closed-form step identities
///
/// ```text
///   1 - 2A = (2a - 1)(2b - 1)/p
///   1 - 2B = (2(c² + d²) - 2(c + d) + 1)/p
/// ```
///
/// evaluated against the pre-renormalization A and B, so the residuals
/// measure rounding error only. Both identities are exact in real
/// arithmetic; observed residuals sit at a few 1e-16.
pub fn identity_residuals<T: Float>(state: &BellDiagonalState<T>) -> (T, T) {
    let [a, b, c, d] = state.components();
    let (raw, p) = step_raw(state);
    let one = T::one();
    let t = two::<T>();
    let lhs_a = one - t * raw[0];
    let rhs_a = (t * a - one) * (t * b - one) / p;
    let lhs_b = one - t * raw[1];
    let rhs_b = (t * (c * c + d * d) - t * (c + d) + one) / p;
    (lhs_a - rhs_a, lhs_b - rhs_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(a: f64, b: f64, c: f64, d: f64) -> BellDiagonalState<f64> {
        BellDiagonalState::new(a, b, c, d).unwrap()
    }

    #[test]
    fn success_probability_examples() {
        assert_eq!(success_probability(&st(1.0, 0.0, 0.0, 0.0)), 1.0);
        assert_eq!(success_probability(&st(0.25, 0.25, 0.25, 0.25)), 0.5);
        let p = success_probability(&st(0.57, 0.41, 0.01, 0.01));
        // (0.98)² + (0.02)²
        assert!((p - 0.9608).abs() < 1e-12);
    }

    #[test]
    fn vertex_is_a_fixed_point() {
        let s = st(1.0, 0.0, 0.0, 0.0);
        let out = qpa_step(&s);
        assert_eq!(out.output, s);
        assert_eq!(out.p, 1.0);
    }

    #[test]
    fn uniform_state_is_a_fixed_point() {
        let s = st(0.25, 0.25, 0.25, 0.25);
        let out = qpa_step(&s);
        assert_eq!(out.output, s);
        assert_eq!(out.p, 0.5);
    }

    #[test]
    fn example_step_matches_direct_evaluation() {
        let s = st(0.57, 0.41, 0.01, 0.01);
        let out = qpa_step(&s);
        // independent evaluation of the step formulas from the stored weights
        let [a, b, c, d] = s.components();
        let p = (a + b) * (a + b) + (c + d) * (c + d);
        assert!((out.p - p).abs() < 1e-15);
        assert!((out.output.a() - (a * a + b * b) / p).abs() < 1e-15);
        assert!((out.output.b() - 2.0 * c * d / p).abs() < 1e-15);
        assert!((out.output.c() - (c * c + d * d) / p).abs() < 1e-15);
        assert!((out.output.d() - 2.0 * a * b / p).abs() < 1e-15);
        // six-figure values, and the first-step dip of a
        assert!((out.output.a() - 0.513115).abs() < 1e-6);
        assert!((out.output.b() - 0.000208).abs() < 1e-6);
        assert!((out.output.c() - 0.000208).abs() < 1e-6);
        assert!((out.output.d() - 0.486469).abs() < 1e-6);
        assert!(out.output.a() < s.a());
    }

    #[test]
    fn output_stays_on_the_simplex() {
        let s = st(0.3, 0.3, 0.2, 0.2);
        let out = qpa_step(&s).output;
        let sum: f64 = out.components().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12);
        assert!(out.components().iter().all(|x| *x >= 0.0));
    }

    #[test]
    fn residuals_vanish_at_exact_states() {
        let (ra, rb) = identity_residuals(&st(1.0, 0.0, 0.0, 0.0));
        assert!(ra.abs() <= 1e-13 && rb.abs() <= 1e-13);
        let (ra, rb) = identity_residuals(&st(0.25, 0.25, 0.25, 0.25));
        assert!(ra.abs() <= 1e-13 && rb.abs() <= 1e-13);
    }

    #[test]
    fn residuals_and_identity_value_at_example_state() {
        let s = st(0.57, 0.41, 0.01, 0.01);
        let (ra, rb) = identity_residuals(&s);
        assert!(ra.abs() <= 1e-13, "r_A = {}", ra);
        assert!(rb.abs() <= 1e-13, "r_B = {}", rb);
        // 1 - 2A = (0.14)(-0.18)/0.9608
        let one_minus_2a = 1.0 - 2.0 * qpa_step(&s).output.a();
        assert!((one_minus_2a - (-0.0262281)).abs() < 1e-6);
    }

    #[test]
    fn uniform_state_identity_value_for_b() {
        // 1 - 2B = (2(c²+d²) - 2(c+d) + 1)/p = 0.25/0.5 = 0.5, so B = 0.25
        let s = st(0.25, 0.25, 0.25, 0.25);
        let b = qpa_step(&s).output.b();
        assert!((b - 0.25).abs() < 1e-15);
    }

    #[test]
    fn swap_commutation_is_exact() {
        let s = st(0.37, 0.23, 0.28, 0.12);
        let a = qpa_step(&s.swap_symmetry());
        let b = qpa_step(&s);
        assert_eq!(a.output, b.output.swap_symmetry());
        assert_eq!(a.p, b.p);
    }

    #[test]
    fn large_b_also_pushes_a_above_half() {
        // (2a-1)(2b-1) < 0 when exactly one of a, b tops 0.5, so A > 0.5
        // follows from the first identity either way
        let mut sampler = crate::sample::SimplexSampler::new(11);
        let mut seen = 0;
        while seen < 1_000 {
            let s = sampler.state::<f64>();
            if s.b() <= 0.5 {
                continue;
            }
            seen += 1;
            assert!(qpa_step(&s).output.a() > 0.5);
        }
    }
}
