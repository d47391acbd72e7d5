//! Scalar backends.
//!
//! Everything downstream is generic over [`Scalar`]. Two implementations ship:
//! [`ExactScalar`], exact arithmetic in the field Q(√2, √3, √5), and `f64`,
//! whose equality and rank decisions are governed by a [`Tolerances`] profile.

mod exact;
mod float;
mod surd;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

pub use exact::{ExactScalar, RADICANDS};
pub use float::FloatScalar;
pub use surd::{parse_surd, SurdError};

/// Tolerance profile used by the float backend. The exact backend ignores it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Absolute threshold under which a float is treated as zero in equality tests.
    pub eq_tol: f64,
    /// Threshold on singular values / pivots for rank decisions.
    pub rank_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq_tol: 1e-9,
            rank_tol: 1e-8,
        }
    }
}

/// Field element contract shared by the exact and float backends.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The rational number `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// True when the value is zero: exactly for the exact backend, up to
    /// `tol.eq_tol` for floats.
    fn is_zero_tol(&self, tol: &Tolerances) -> bool;
    /// Zero test used when deciding pivots and ranks.
    fn is_negligible_pivot(&self, tol: &Tolerances) -> bool;
    fn to_f64(&self) -> f64;
    fn is_exact() -> bool;

    /// Exact zero test (no tolerance).
    fn is_exactly_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Sign of a nonzero element; `0` for zero (tolerance-aware for floats).
    fn signum_tol(&self, tol: &Tolerances) -> i32 {
        if self.is_zero_tol(tol) {
            0
        } else if self.to_f64() > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Basis of the null space of the `rows x cols` matrix given row-major.
    ///
    /// The default is Gauss-Jordan elimination; the float backend overrides it
    /// with a singular value decomposition.
    fn null_space(data: &[Self], rows: usize, cols: usize, tol: &Tolerances) -> Vec<Vec<Self>> {
        crate::linalg::gauss_null_space(data, rows, cols, tol)
    }

    /// Rank of a row-major `rows x cols` matrix.
    fn rank(data: &[Self], rows: usize, cols: usize, tol: &Tolerances) -> usize {
        cols - Self::null_space(data, rows, cols, tol).len()
    }
}
