use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text.
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("branch {branch}: weight {weight} is below 2")]
    BranchWeight { branch: usize, weight: u64 },

    #[error("branch {branch} is empty")]
    EmptyBranch { branch: usize },

    #[error("central weight must be positive")]
    CentralWeight,

    #[error("rational central curve needs at least 3 branches, found {found}")]
    TooFewBranches { found: usize },

    #[error("graph is not negative definite (b - sum beta/alpha = {degree})")]
    NotDefinite { degree: BigRational },

    /// A computation was asked for outside of its domain.
    #[error("{0}")]
    Domain(String),

    /// Two annotated curves meet in a fixed point that is neither isolated
    /// nor lies on a pointwise fixed curve.
    #[error("fixed point between curves {a} and {b} is not isolated, but neither curve is fixed pointwise")]
    FixedLocus { a: usize, b: usize },

    #[error("curve {curve}: weight {weight} plus rotation sum {rotation} is not divisible by {order}")]
    Divisibility {
        curve: usize,
        weight: u64,
        rotation: u64,
        order: u32,
    },

    #[error("curves {a} and {b} are exchanged but {reason}")]
    SwapMismatch { a: usize, b: usize, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: msg.into(),
        }
    }

    /// True for malformed input, as opposed to well-formed input that
    /// violates a mathematical condition.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}
