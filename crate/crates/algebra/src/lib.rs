//! Symbolic `*`-Hopf algebras `A(SU_q(2))` and `A(E_q(2))`.
//!
//! Elements are finite sums of normal-ordered monomials with complex
//! coefficients at a fixed numeric `q`:
//! * `SU_q(2)`: `x^a u^b (u*)^c (x*)^d` with `a d = 0`, subject to
//!   `ux = qxu`, `u*x = qxu*`, `x*u = qux*`, `x*u* = qu*x*`, `uu* = u*u`,
//!   `xx* = 1 - uu*`, `x*x = 1 - q^2 uu*`;
//! * `E_q(2)`: `delta^(h/2) z^b (z*)^c`, subject to `zz* = q^-2 z*z`,
//!   `z delta^(1/2) = q delta^(1/2) z`, `z* delta^(1/2) = q delta^(1/2) z*`.
//!
//! [`Hopf`] carries `q` and implements multiplication, the involution,
//! coproduct, counit and antipode. [`GradedElement`] extends `E_q(2)` by
//! functions of `rho^2 = z z*` that are not polynomials.

pub mod element;
pub mod graded;
pub mod grading;
pub mod hopf;
pub mod mono;
pub mod uq;

pub use element::{Element, Tensor3, TensorElement};
pub use graded::{GradedElement, GradedTerm, RadialFn};
pub use grading::{AutomorphismSpec, Bigrade, Half};
pub use hopf::{AlgebraError, HopfEntry, HopfReport, Hopf, Letter};
pub use mono::{EuMono, Gen, GeneratorKind, Monomial, SuMono};

/// `E_q(2)` over `f64`.
pub type EAlgebra = Hopf<EuMono, f64>;
/// `SU_q(2)` over `f64`.
pub type SuAlgebra = Hopf<SuMono, f64>;
/// `E_q(2)` element over `f64`.
pub type EElement = Element<EuMono, f64>;
/// `SU_q(2)` element over `f64`.
pub type SuElement = Element<SuMono, f64>;
/// Complex coefficient over `f64`.
pub type Coeff = num_complex::Complex64;
