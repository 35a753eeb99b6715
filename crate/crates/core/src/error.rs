use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("invalid group specification: {0}")]
    SpecInvalid(String),

    #[error("no primitive {q}-th root of unity in F_{p}")]
    NoRootOfUnity { q: u64, p: u64 },

    #[error("{0} is not a product of prime powers > 1")]
    InvalidDecomposition(String),

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("element is not contained in the group")]
    NotInGroup,

    #[error("time budget exhausted")]
    Timeout,

    #[error("certificate rejected: {0}")]
    VerificationFailed(String),

    #[error("not applicable: {0}")]
    Inapplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
