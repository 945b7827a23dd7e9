//! Bell-diagonal two-qubit states on the probability simplex.
//!
//! A state is the vector of the four diagonal weights of the density operator
//! in the Bell basis, kept in the fixed slot order
//!
//! ```text
//!   a = weight of |phi+>    b = weight of |psi->
//!   c = weight of |psi+>    d = weight of |phi->
//! ```
//!
//! with `a + b + c + d = 1`. The slot order is load-bearing: the purification
//! map treats `b` and `d` asymmetrically, so the pairing (a, b) / (c, d) must
//! not be shuffled.

use std::fmt;
use std::str::FromStr;

use crate::float::{half, lit, scaled_tol, Float};
use crate::QpaError;

/// Components more negative than this are rejected; within it they are
/// treated as exact zeros (round-trip dust).
pub const COMPONENT_SLACK: f64 = 1e-12;

/// Inputs whose sum differs from 1 by more than this are rejected; anything
/// closer is renormalized by its computed sum. The f64 value; for coarser
/// scalars the effective window widens to a few of their epsilons.
pub const NORMALIZATION_WINDOW: f64 = 1e-9;

/// Post-construction guarantee on `|a + b + c + d - 1|`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Default half-width of the band around 0.5 classified as [`RegionClass::Boundary`].
pub const DEFAULT_REGION_TOL: f64 = 1e-12;

/// Labels for the four Bell states, in slot order `(a, b, c, d)`.
///
/// `|phi±> = (|00> ± |11>)/√2`, `|psi±> = (|01> ± |10>)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellIndex {
    PhiPlus,
    PsiMinus,
    PsiPlus,
    PhiMinus,
}

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [
        BellIndex::PhiPlus,
        BellIndex::PsiMinus,
        BellIndex::PsiPlus,
        BellIndex::PhiMinus,
    ];

    /// Position of this label in the component vector.
    #[inline]
    pub fn slot(self) -> usize {
        match self {
            BellIndex::PhiPlus => 0,
            BellIndex::PsiMinus => 1,
            BellIndex::PsiPlus => 2,
            BellIndex::PhiMinus => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BellIndex::PhiPlus => "PhiPlus",
            BellIndex::PsiMinus => "PsiMinus",
            BellIndex::PsiPlus => "PsiPlus",
            BellIndex::PhiMinus => "PhiMinus",
        }
    }
}

/// Where a state sits relative to the 0.5 threshold that separates the
/// basins of the map.
///
/// Exactly one class applies: the sum constraint lets at most one component
/// exceed 0.5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionClass {
    /// `a > 0.5`: purifiable toward `|phi+>`.
    InRegionR,
    /// `b > 0.5`: one step lands in the `a > 0.5` region.
    BIsLarge,
    /// `c > 0.5`: purifiable toward `|psi+>`.
    CIsLarge,
    /// `d > 0.5`: one step lands in the `c > 0.5` region.
    DIsLarge,
    /// All components below 0.5; no component ever crosses 0.5.
    NonPurifiable,
    /// Some component within tolerance of exactly 0.5.
    Boundary,
}

impl RegionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionClass::InRegionR => "InRegionR",
            RegionClass::BIsLarge => "BIsLarge",
            RegionClass::CIsLarge => "CIsLarge",
            RegionClass::DIsLarge => "DIsLarge",
            RegionClass::NonPurifiable => "NonPurifiable",
            RegionClass::Boundary => "Boundary",
        }
    }
}

/// A validated Bell-diagonal state: four nonnegative weights summing to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState<T> {
    components: [T; 4],
}

impl<T: Float> BellDiagonalState<T> {
    /// Validates and normalizes the four weights.
    ///
    /// Values within [`COMPONENT_SLACK`] below zero are clamped to zero; a sum
    /// within [`NORMALIZATION_WINDOW`] of 1 is divided out (skipped when the
    /// sum is exactly 1, so vertex states stay bit-exact). Anything worse is
    /// rejected, as is a state with two components above 0.5.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self, QpaError> {
        let zero = T::zero();
        let one = T::one();
        let slack = lit::<T>(COMPONENT_SLACK);
        let mut comps = [a, b, c, d];
        for x in &mut comps {
            if !x.is_finite() {
                return Err(QpaError::RejectedState(format!(
                    "non-finite component {:?}",
                    x
                )));
            }
            if *x < zero {
                if *x >= -slack {
                    *x = zero;
                } else {
                    return Err(QpaError::RejectedState(format!(
                        "negative component {:?}",
                        x
                    )));
                }
            }
            if *x > one + slack {
                return Err(QpaError::RejectedState(format!(
                    "component {:?} exceeds 1",
                    x
                )));
            }
        }
        let sum = (comps[0] + comps[1]) + (comps[2] + comps[3]);
        if (sum - one).abs() > scaled_tol::<T>(NORMALIZATION_WINDOW) {
            return Err(QpaError::RejectedState(format!(
                "components sum to {:?}, not 1",
                sum
            )));
        }
        if sum != one {
            for x in &mut comps {
                *x = *x / sum;
            }
        }
        let big = comps.iter().filter(|x| **x > half::<T>()).count();
        if big > 1 {
            return Err(QpaError::RejectedState(format!(
                "{} components exceed 0.5; the sum constraint allows at most one",
                big
            )));
        }
        Ok(Self { components: comps })
    }

    /// Wraps step output that is already normalized. Debug builds re-check
    /// the invariants.
    #[inline]
    pub(crate) fn from_normalized(components: [T; 4]) -> Self {
        debug_assert!(components.iter().all(|x| *x >= -lit::<T>(COMPONENT_SLACK)));
        debug_assert!({
            let s = (components[0] + components[1]) + (components[2] + components[3]);
            (s - T::one()).abs() <= scaled_tol::<T>(SUM_TOLERANCE)
        });
        Self { components }
    }

    #[inline]
    pub fn a(&self) -> T {
        self.components[0]
    }

    #[inline]
    pub fn b(&self) -> T {
        self.components[1]
    }

    #[inline]
    pub fn c(&self) -> T {
        self.components[2]
    }

    #[inline]
    pub fn d(&self) -> T {
        self.components[3]
    }

    #[inline]
    pub fn components(&self) -> [T; 4] {
        self.components
    }

    /// Weight of the given Bell component, i.e. the fidelity of the state to
    /// that Bell state.
    #[inline]
    pub fn fidelity(&self, target: BellIndex) -> T {
        self.components[target.slot()]
    }

    #[inline]
    pub fn max_component(&self) -> T {
        self.components
            .iter()
            .fold(T::neg_infinity(), |m, x| m.max(*x))
    }

    /// Largest absolute per-component difference to another state.
    #[inline]
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.components
            .iter()
            .zip(other.components.iter())
            .fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()))
    }

    /// The exchange a<->c, b<->d under which the map commutes. Involutive.
    #[inline]
    pub fn swap_symmetry(&self) -> Self {
        let [a, b, c, d] = self.components;
        Self {
            components: [c, d, a, b],
        }
    }

    /// Classifies against the 0.5 threshold with an explicit tolerance.
    ///
    /// A component inside `[0.5 - tol, 0.5 + tol]` forces `Boundary`, even in
    /// the degenerate case where slack dust lets another component sit above
    /// `0.5 + tol`: a borderline component makes the basin call unreliable.
    pub fn classify_region(&self, tol: T) -> RegionClass {
        let h = half::<T>();
        if self.components.iter().any(|x| (*x - h).abs() <= tol) {
            return RegionClass::Boundary;
        }
        if self.a() > h + tol {
            RegionClass::InRegionR
        } else if self.b() > h + tol {
            RegionClass::BIsLarge
        } else if self.c() > h + tol {
            RegionClass::CIsLarge
        } else if self.d() > h + tol {
            RegionClass::DIsLarge
        } else {
            RegionClass::NonPurifiable
        }
    }

    /// [`classify_region`](Self::classify_region) with the default tolerance.
    #[inline]
    pub fn region(&self) -> RegionClass {
        self.classify_region(scaled_tol::<T>(DEFAULT_REGION_TOL))
    }
}

impl BellDiagonalState<f64> {
    /// Renders the `a,b,c,d` literal. `Display` for `f64` emits the shortest
    /// string that parses back to the same bits, so round-trips are exact.
    pub fn to_literal(&self) -> String {
        let [a, b, c, d] = self.components;
        format!("{},{},{},{}", a, b, c, d)
    }
}

impl FromStr for BellDiagonalState<f64> {
    type Err = QpaError;

    /// Parses the `a,b,c,d` comma-separated literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(QpaError::RejectedState(format!(
                "expected 4 comma-separated values, got {}",
                parts.len()
            )));
        }
        let mut vals = [0.0f64; 4];
        for (v, part) in vals.iter_mut().zip(&parts) {
            *v = part.trim().parse::<f64>().map_err(|e| {
                QpaError::RejectedState(format!("bad component {:?}: {}", part, e))
            })?;
        }
        Self::new(vals[0], vals[1], vals[2], vals[3])
    }
}

impl fmt::Display for BellDiagonalState<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}
