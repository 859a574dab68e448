//! Plancherel analysis on `E_q(2)` over a geometric momentum lattice.
//!
//! * [`gram_matrix`]: lattice Gram matrices of the `t^p_ij`.
//! * [`extract_normalization`]: fits the diagonal to `c q^(-2j) / p` (right)
//!   and `c q^(2i) / p` (left).
//! * [`scaling_identity_check`]: `beta(t^p) = t^(p p0)` and the scaling of
//!   the scalar products.
//! * [`forward_transform`], [`inverse_transform`]: the transform pair.

pub mod gram;
pub mod lattice;
pub mod normalization;
pub mod scaling;
pub mod serial;
pub mod transform;

use matrixel::MatrixError;
use reps::RepError;

pub use gram::{default_window, gram_matrix, label_bigrade, label_profile, lattice_profiles, pair_sum, profile, GramMatrix};
pub use lattice::MomentumLattice;
pub use normalization::{
    extract_normalization, fit_normalization, normalization_constant, NormalizationEntry,
    NormalizationReport,
};
pub use scaling::{beta_coefficient_deviation, scaling_identity_check, ScalingReport};
pub use transform::{
    bump_element, forward_transform, inverse_transform, roundtrip, IndexWindow, RoundtripReport,
    TransformTable,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlancherelError {
    #[error("lattice: {0}")]
    Lattice(String),
    #[error("window: {0}")]
    Window(String),
    #[error("labels outside the index window: {0:?}")]
    Coverage(Vec<(i64, i64)>),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("output: {0}")]
    Output(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
}

impl From<csv::Error> for PlancherelError {
    fn from(e: csv::Error) -> Self {
        PlancherelError::Output(e.to_string())
    }
}
