use thiserror::Error;

use crate::sparsity::ViolationWitness;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent caller input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A parse failure with the offending location (line number or JSON field path).
    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid sparsity parameters (k={k}, l={l}): need 1 <= k and 0 <= l <= 2k-1")]
    Params { k: i64, l: i64 },

    /// An exhaustive routine was asked to run above its configured size bound.
    #[error("{what}: size {size} exceeds limit {limit}{hint}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
        hint: &'static str,
    },

    /// The graph handed to an edge replacement was not (k, 2k-1)-tight.
    #[error("replacement graph is not (k,2k-1)-tight")]
    NotTight { witness: Option<ViolationWitness> },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
