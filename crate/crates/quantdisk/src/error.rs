use thiserror::Error;

/// Errors raised by the algebra, seminorm and disk layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} is outside the index universe of model {model}")]
    OutsideUniverse { model: String, index: String },
    #[error("model {0} declares no involution")]
    NoInvolution(String),
    #[error("hbar = {0} is not an allowed value")]
    NotAllowedHbar(String),
    #[error("hbar = {0} must be positive for this operation")]
    NonPositiveHbar(String),
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("divergent quantity: {0}")]
    Divergent(String),
    #[error("not a group element: {0}")]
    NotInGroup(String),
    #[error("not a Lie algebra element: {0}")]
    NotInLieAlgebra(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
