//! Scalar abstraction: everything in this crate is generic over a floating
//! point type. Use `f64` unless you have a reason not to; the tolerances in
//! the verification suites assume 64-bit arithmetic.

use std::fmt::Debug;

/// Floating point scalar usable by the map and its analysis.
pub trait Float:
    num_traits::Float + num_traits::FromPrimitive + Debug + Send + Sync + 'static
{
}

impl<T> Float for T where
    T: num_traits::Float + num_traits::FromPrimitive + Debug + Send + Sync + 'static
{
}

/// Shorthand for embedding an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn lit<T: Float>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

#[inline]
pub(crate) fn two<T: Float>() -> T {
    T::one() + T::one()
}

/// A rounding-guard tolerance: the f64 baseline, widened to a few epsilons
/// of the working scalar when that is coarser (f32).
#[inline]
pub(crate) fn scaled_tol<T: Float>(base: f64) -> T {
    lit::<T>(base).max(T::epsilon() * lit::<T>(8.0))
}

#[inline]
pub(crate) fn half<T: Float>() -> T {
    T::from_f64(0.5).expect("0.5 not representable")
}
