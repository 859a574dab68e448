//! Command-line front end: expressions, configuration, command dispatch and
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 numeric non-convergence.

pub mod commands;
pub mod config;
pub mod expr;
pub mod output;
pub mod suites;

use algebra::AlgebraError;
use matrixel::MatrixError;
use plancherel::PlancherelError;
use qkernel::QError;
use reps::RepError;

pub use commands::{run, Cli, Outcome};
pub use config::{OutputFormat, Overrides, RunConfig};
pub use expr::{eval_e, eval_su, parse_expression, EValue, Expr, ExprError, ParseError};
pub use output::Report;
pub use suites::{run_suite, CheckItem, Suite, SuiteReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Expr(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Expr(e.into())
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        match e {
            QError::Domain(_) | QError::Pole(_) => CliError::Usage(e.to_string()),
            QError::Divergence(_) | QError::Precision { .. } | QError::Window { .. } => {
                CliError::NonConvergence(e.to_string())
            }
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Window(_) | RepError::Unsupported(_) => CliError::Usage(e.to_string()),
            RepError::Divergence { .. } => CliError::NonConvergence(e.to_string()),
            RepError::Inconsistent(_) => CliError::Verification(e.to_string()),
            RepError::Algebra(e) => e.into(),
            RepError::Series(e) => e.into(),
        }
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Label(_) | MatrixError::Region(_) => CliError::Usage(e.to_string()),
            MatrixError::Convergence(_) | MatrixError::Truncation(_) => CliError::NonConvergence(e.to_string()),
            MatrixError::Algebra(e) => e.into(),
            MatrixError::Rep(e) => e.into(),
            MatrixError::Series(e) => e.into(),
        }
    }
}

impl From<PlancherelError> for CliError {
    fn from(e: PlancherelError) -> Self {
        match e {
            PlancherelError::Lattice(_) | PlancherelError::Coverage(_) | PlancherelError::Output(_) => {
                CliError::Usage(e.to_string())
            }
            PlancherelError::Window(_) => CliError::NonConvergence(e.to_string()),
            PlancherelError::ModelMismatch(_) => CliError::Verification(e.to_string()),
            PlancherelError::Matrix(e) => e.into(),
            PlancherelError::Rep(e) => e.into(),
            PlancherelError::Algebra(e) => e.into(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_taxonomy() {
        assert_eq!(CliError::from(QError::Divergence(10)).exit_code(), 3);
        assert_eq!(CliError::from(QError::Domain("q".into())).exit_code(), 2);
        assert_eq!(CliError::from(MatrixError::Label("p".into())).exit_code(), 2);
        assert_eq!(CliError::from(PlancherelError::Coverage(vec![(9, 9)])).exit_code(), 2);
        assert_eq!(CliError::from(PlancherelError::ModelMismatch("r".into())).exit_code(), 1);
        assert_eq!(CliError::from(PlancherelError::Window("edge".into())).exit_code(), 3);
        let nested = PlancherelError::Matrix(MatrixError::Rep(RepError::Series(QError::Divergence(3))));
        assert_eq!(CliError::from(nested).exit_code(), 3);
    }
}
