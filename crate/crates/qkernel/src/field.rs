//! Scalar traits shared by the q-series code.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Floating-point scalar used by the numeric kernels (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + QField + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into the working type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Unit roundoff of the type.
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + QField
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// A field in which the finite q-calculus primitives can be evaluated.
///
/// Implemented for real and complex floats and for exact rationals, so the
/// same code path can serve as its own high-precision oracle.
pub trait QField: Clone + Debug + Num + Neg<Output = Self> {
    /// Absolute value as an `f64`, used for stopping rules and diagnostics.
    fn magnitude(&self) -> f64;

    /// Embeds an `f64`. Exact for rationals and for `f64`.
    fn embed(x: f64) -> Self;

    /// True if the value is exactly representable as zero or is below the
    /// type's resolution relative to `scale`.
    fn is_negligible(&self, scale: f64) -> bool;
}

impl QField for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn embed(x: f64) -> Self {
        x
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= 8.0 * f64::EPSILON * scale.abs().max(1.0)
    }
}

impl QField for f32 {
    fn magnitude(&self) -> f64 {
        f64::from(self.abs())
    }
    fn embed(x: f64) -> Self {
        x as f32
    }
    fn is_negligible(&self, scale: f64) -> bool {
        f64::from(self.abs()) <= 8.0 * f64::from(f32::EPSILON) * scale.abs().max(1.0)
    }
}

impl<T: Real> QField for Complex<T> {
    fn magnitude(&self) -> f64 {
        self.norm().to_f64().unwrap_or(f64::INFINITY)
    }
    fn embed(x: f64) -> Self {
        Complex::new(T::lit(x), T::zero())
    }
    fn is_negligible(&self, scale: f64) -> bool {
        let eps = T::epsilon().to_f64().unwrap_or(f64::EPSILON);
        self.magnitude() <= 8.0 * eps * scale.abs().max(1.0)
    }
}

impl QField for BigRational {
    fn magnitude(&self) -> f64 {
        Signed::abs(self).to_f64().unwrap_or(f64::INFINITY)
    }
    fn embed(x: f64) -> Self {
        BigRational::from_float(x).expect("finite value")
    }
    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

/// Integer power with negative exponents, by binary exponentiation.
pub fn powi<T: QField>(x: &T, n: i64) -> T {
    let mut base = if n < 0 { T::one() / x.clone() } else { x.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Neumaier-compensated accumulator that also tracks the largest term seen.
#[derive(Clone, Debug)]
pub struct Accumulator<T: QField> {
    sum: T,
    comp: T,
    max_term: f64,
    terms: usize,
}

impl<T: QField> Default for Accumulator<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: QField> Accumulator<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
            max_term: 0.0,
            terms: 0,
        }
    }

    pub fn add(&mut self, x: T) {
        let mx = x.magnitude();
        if mx > self.max_term {
            self.max_term = mx;
        }
        self.terms += 1;
        let t = self.sum.clone() + x.clone();
        if self.sum.magnitude() >= mx {
            self.comp = self.comp.clone() + ((self.sum.clone() - t.clone()) + x);
        } else {
            self.comp = self.comp.clone() + ((x - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum.clone() + self.comp.clone()
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn max_term(&self) -> f64 {
        self.max_term
    }

    /// Ratio of the largest term to the magnitude of the sum (at least 1).
    pub fn cancellation(&self) -> f64 {
        cancellation_ratio(self.max_term, self.value().magnitude())
    }
}

/// `max_term / |value|`, clamped below at 1; infinite for exact cancellation.
pub fn cancellation_ratio(max_term: f64, value: f64) -> f64 {
    if max_term == 0.0 {
        1.0
    } else if value == 0.0 {
        f64::INFINITY
    } else {
        (max_term / value).max(1.0)
    }
}
