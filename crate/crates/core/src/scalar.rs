//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Everything downstream (matrices, polynomials, decompositions) is generic
//! over [`Scalar`]. Exact types short-circuit every tolerance test to a
//! literal zero test, so one elimination routine serves both modes.

use std::fmt;
use std::ops::Neg;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Arbitrary-precision rational scalar used by the exact mode.
pub type Rational = BigRational;

/// Field scalar with enough structure for dense linear algebra.
pub trait Scalar:
    Num + Clone + Neg<Output = Self> + PartialEq + fmt::Debug + fmt::Display + 'static
{
    /// True when arithmetic is exact and zero tests need no tolerance.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Magnitude as f64, used for pivot selection and residual norms.
    fn abs_f64(&self) -> f64;

    /// Lossy conversion to f64 (real part for complex scalars).
    fn as_f64(&self) -> f64;

    /// Zero test: exact for exact scalars, thresholded otherwise.
    fn is_small(&self, threshold: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() <= threshold
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn abs_f64(&self) -> f64 {
        self.abs()
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }

    fn abs_f64(&self) -> f64 {
        self.abs() as f64
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(v.into())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num.into(), den.into())
    }

    fn abs_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn as_f64(&self) -> f64 {
        self.re
    }
}
