//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A value is outside the domain an operation is defined on.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The requested exact analysis needs a fitness function that depends on
    /// the genotype only through its ones-count.
    #[error("problem `{0}` is not level-reducible; no ones-count lattice exists")]
    NotLevelReducible(String),

    /// The absorbing (optimal) set cannot be reached from some state, so
    /// expected hitting times are infinite.
    #[error("optimum unreachable from state {state}")]
    UnreachableOptimum { state: usize },

    /// The linear solve produced an unusable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// An aggregate was requested over no data.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// A budget expression failed to parse or evaluate to a positive integer.
    #[error("budget expression: {0}")]
    BudgetExpr(String),
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
