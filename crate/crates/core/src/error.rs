use thiserror::Error;

/// Errors raised while building datasets, moments or estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    /// A matrix that has to be inverted is singular or numerically so.
    ///
    /// `matrix` names the offending quantity (for example `C_xx_hat`).
    #[error("{matrix} is singular (condition estimate {condition:.3e}); {hint}")]
    Singular {
        matrix: String,
        condition: f64,
        hint: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Rename the matrix reported by a `Singular` error and attach a hint.
    pub(crate) fn naming(self, matrix: &str, hint: &str) -> Self {
        match self {
            Error::Singular { condition, .. } => Error::Singular {
                matrix: matrix.to_string(),
                condition,
                hint: hint.to_string(),
            },
            other => other,
        }
    }
}
