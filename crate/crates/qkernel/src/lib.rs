//! Scalar q-series and q-calculus primitives.
//!
//! The finite primitives ([`q_number`], [`q_factorial`], [`q_pochhammer`],
//! [`q_binomial`], [`phi21`]) are generic over any [`QField`], which covers
//! `f32`, `f64`, complex floats and exact `BigRational`s. The q-Bessel
//! evaluators and Jackson integrals are generic over [`Real`] floats, with
//! an arbitrary-precision fallback for the q-Bessel series.

pub mod basic;
pub mod bessel;
pub mod field;
pub mod hyper;
pub mod jackson;
pub mod param;

pub use basic::{factorial, q_binomial, q_factorial, q_number, q_pochhammer};
pub use bessel::{
    classical_bessel_series, lattice_argument, q_bessel, q_bessel_lattice, q_bessel_series,
};
pub use field::{powi, Accumulator, QField, Real};
pub use hyper::{phi21, phi21_terms, SeriesOptions};
pub use jackson::{
    jackson_integral_halfline, jackson_integral_halfline_anchored,
    jackson_integral_halfline_checked, jackson_integral_unit, JacksonValue,
};
pub use param::{DeformationParameter, QError, QSeriesValue};

/// Default real scalar.
pub type Scalar = f64;
/// Default complex scalar.
pub type Complex = num_complex::Complex64;
/// Series value over the default complex scalar.
pub type SeriesValue = QSeriesValue<Complex>;
