//! Matrix elements of the irreducible representations of `SU_q(2)` and
//! `E_q(2)`, the contraction `l -> inf` between them, and the classical
//! `SU(2)` / `E(2)` formulas.
//!
//! * [`su_matrix_element`]: `t^l_ij` as a polynomial, in the convention
//!   chosen by [`calibrate`] and frozen in [`calibrated::CALIBRATED`].
//! * [`eq_matrix_element`]: `t^p_ij` as a graded element with a q-Bessel
//!   radial part.
//! * [`contraction_check`], [`classical_contraction_check`]: convergence
//!   reports.

pub mod calibrated;
pub mod calibration;
pub mod classical;
pub mod contraction;
pub mod euclid;
pub mod label;
pub mod ladder;
pub mod su;

use algebra::AlgebraError;
use qkernel::QError;
use reps::RepError;

pub use calibration::{calibrate, render_constants, CalibrationEntry, CalibrationReport};
pub use classical::{
    bessel_integral, classical_contraction_check, classical_e2_element, classical_jacobi,
    classical_su2_element, ClassicalCompactElement, ClassicalEuclidElement,
};
pub use contraction::{
    coefficient_ratios, contracted_action, contraction_check, contraction_deviation,
    contraction_scale, ConvergenceReport, ConvergenceRow,
};
pub use euclid::{eq_matrix_element, eq_matrix_element_poly, graded_counit, phase, represent_eq};
pub use label::{CompactLabel, EuclidLabel};
pub use ladder::{LadderAction, LadderRelation};
pub use su::{su_matrix_element, su_matrix_element_with, Convention};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("label: {0}")]
    Label(String),
    #[error("unsupported region: {0}")]
    Region(String),
    #[error("no convergence: {}", .0.to_csv().replace('\n', "; "))]
    Convergence(Box<ConvergenceReport>),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Series(#[from] QError),
}
