use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input data that violates a precondition of the model (e.g. a
    /// non-positive surface tension sample).
    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("{what} exceeds the brute-force guard ({value} > {limit}); pass the override flag to force it")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("no facet: {0}")]
    NoFacet(String),

    #[error("direction field is not a support function: {0}")]
    NotSupportFunction(String),

    #[error("infinite volume: {0}")]
    InfiniteVolume(String),

    #[error("self-intersecting polygon: edges {0} and {1} cross")]
    SelfIntersecting(usize, usize),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// An exact identity that must hold came out false.
    #[error("contradiction: {0}")]
    Contradiction(String),
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
