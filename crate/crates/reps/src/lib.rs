//! Representations of `SU_q(2)` and `E_q(2)` on `l2`, the invariant integral
//! and the left and right scalar products.
//!
//! * [`EuclidRep`] acts on `l2(Z)`, [`SuRep`] on `l2(Z>=0)`; both are weighted
//!   shifts, so operators are stored by diagonals ([`RepOperator`]).
//! * [`audit_relations`] fits the exponents of the defining relations.
//! * [`integral_e`], [`integral_su`], [`scalar_product_e`] sum lattice series
//!   adaptively; [`haar_check_e`] and [`haar_check_su`] test legwise
//!   invariance of the integral.

pub mod audit;
pub mod haar;
pub mod integral;
pub mod operator;
pub mod rep;
pub mod window;

use algebra::AlgebraError;
use qkernel::QError;

pub use audit::{audit_relations, candidates, AuditEntry, AuditReport, RelationCandidate, RelationShape};
pub use haar::{e_sample, haar_check_e, haar_check_su, su_sample, HaarReport, SpectralOptions};
pub use integral::{
    adaptive_sum, integral_e, integral_su, integral_su_closed, scalar_product_e, subset_measure,
    weighted_trace, IndexSet, IntegralValue, Side, MAX_POINTS,
};
pub use operator::RepOperator;
pub use rep::{
    component_weight, generator_matrix, graded_term_weight, ordered_product, represent,
    represent_graded, rho2, rho2_operator, z_power_weight, EuclidRep, Representation, SuLiteralRep,
    SuRep,
};
pub use window::{BasisWindow, Space};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error("window: {0}")]
    Window(String),
    #[error("series did not converge after {points} points: {detail}")]
    Divergence { points: usize, detail: String },
    #[error("representation is inconsistent: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] QError),
}

/// Operator over `f64`.
pub type Operator = RepOperator<f64>;
/// `E_q(2)` representation over `f64`.
pub type EuclidRep64 = EuclidRep<f64>;
/// `SU_q(2)` representation over `f64`.
pub type SuRep64 = SuRep<f64>;
