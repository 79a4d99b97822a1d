use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("subspace is not an ideal (residual {residual:.3e})")]
    NotAnIdeal { residual: f64 },

    #[error("subspace is not closed under the bracket (residual {residual:.3e})")]
    NotASubalgebra { residual: f64 },

    #[error("formula inapplicable: {0}")]
    FormulaInapplicable(String),

    #[error("invalid warp: {0}")]
    InvalidWarp(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e}, best estimate {lambda0})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        lambda0: f64,
        eigvec: Vec<f64>,
    },

    #[error("iterative and dense eigenvalues disagree: {iterative} vs {dense}")]
    SolverDisagreement { iterative: f64, dense: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
