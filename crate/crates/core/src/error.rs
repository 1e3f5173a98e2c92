use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generators do not span a full-dimensional cone")]
    NotFullDimensional,

    #[error("cone is not pointed: 0 is not the only invertible element")]
    NotPointed,

    #[error("support form is not facet-defining: {0}")]
    InvalidSupportForm(String),

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("Segre factor dimensions must all be at least 2")]
    FactorDimensionTooSmall,

    #[error("factor list must not be empty")]
    NoFactors,

    #[error("factors are not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("Veronese steps must be coprime")]
    StepsNotCoprime,

    #[error("no consistent quasi-polynomial period up to {0}")]
    NoConsistentPeriod(usize),

    #[error("enumeration did not stabilize within the search bound")]
    EnumerationUnstable,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("convex hull in free rank {0} is not supported")]
    UnsupportedRank(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
