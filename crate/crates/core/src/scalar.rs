//! Numeric backends for the geometry kernel.
//!
//! Everything downstream is generic over [`Scalar`], which has exactly two
//! implementations: arbitrary-precision rationals ([`Rat`]) and IEEE-754
//! doubles. The rational backend is the ground truth: every identity this
//! crate checks is polynomial, so it can be verified with exact equality.
//! The double backend exists for frames that cannot be reached without
//! square roots (rotations and circumradius scaling), and compares values
//! through [`Scalar::negligible`] with a relative tolerance.
//!
//! Mixing backends is impossible by construction: the backend is a type
//! parameter, so a mixed expression does not compile. The JSON layer picks
//! one backend per document and reports a mismatch as a parse error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar. `num_rational::Ratio` keeps values reduced to
/// lowest terms with a positive denominator, which is exactly the invariant
/// the kernel needs.
pub type Rat = BigRational;

/// Relative tolerance for double-backend comparisons. Canonical scenes are
/// normalized to the unit circumcircle, so magnitudes stay near 1 and this
/// is conservative.
pub const REL_TOL: f64 = 1e-9;

/// Arithmetic backend of a scalar type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Double,
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Double => write!(f, "double"),
        }
    }
}

/// Field operations plus the backend-specific zero test used by every
/// geometric predicate.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn from_int(v: i64) -> Self;

    fn abs(&self) -> Self;

    /// Whether `residual` counts as zero at the given magnitude `scale`.
    ///
    /// Exact backend: true iff the residual is exactly zero; the scale is
    /// ignored. Double backend: `|residual| <= REL_TOL * max(|scale|, 1)`,
    /// i.e. relative to the largest intermediate magnitude with an absolute
    /// floor for unit-normalized data.
    fn negligible(residual: &Self, scale: &Self) -> bool;

    fn to_f64(&self) -> f64;

    fn two() -> Self {
        Self::from_int(2)
    }
}

impl Scalar for Rat {
    const BACKEND: Backend = Backend::Exact;

    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn negligible(residual: &Self, _scale: &Self) -> bool {
        residual.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Double;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn negligible(residual: &Self, scale: &Self) -> bool {
        f64::abs(*residual) <= REL_TOL * f64::abs(*scale).max(1.0)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Shorthand for building exact rationals in tests and scene builders.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Largest absolute value among the given scalars; zero for an empty slice.
pub fn max_abs<S: Scalar>(values: &[S]) -> S {
    let mut best = S::zero();
    for v in values {
        let a = v.abs();
        if a > best {
            best = a;
        }
    }
    best
}
