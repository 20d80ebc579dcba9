//! Numeric traits the library is generic over.
//!
//! Laplacian assembly and quadratic forms only need field arithmetic, so they
//! accept any [`Weight`], including exact rationals. Spectral, likelihood and
//! clustering code needs transcendental functions and is bounded on [`Real`]
//! (`f32` or `f64`).

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Scalar usable as a cardinality weight and Laplacian entry.
pub trait Weight: Num + Copy + PartialOrd + FromPrimitive + Debug + Send + Sync + 'static {}

impl<T> Weight for T where T: Num + Copy + PartialOrd + FromPrimitive + Debug + Send + Sync + 'static {}

/// Floating-point scalar.
pub trait Real: Weight + Float + FloatConst + Sum + Display + Default {}

impl<T> Real for T where T: Weight + Float + FloatConst + Sum + Display + Default {}

/// Converts an `f64` constant into `S`.
#[inline]
pub(crate) fn lit<S: Real>(x: f64) -> S {
    S::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts a count into `S`.
#[inline]
pub(crate) fn count<S: Weight>(x: usize) -> S {
    S::from_usize(x).expect("count representable in scalar type")
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus<S: Real>(x: S) -> S {
    if x > S::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `1 / (1 + e^x)`, the range-dependent edge probability for exponent `x`.
#[inline]
pub fn logistic_decay<S: Real>(x: S) -> S {
    if x > S::zero() {
        let e = (-x).exp();
        e / (S::one() + e)
    } else {
        S::one() / (S::one() + x.exp())
    }
}
