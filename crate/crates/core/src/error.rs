use thiserror::Error;

/// Errors raised by the fixed-point machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary composite is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error("chain map does not commute with boundaries in degree {0}")]
    NotChainMap(usize),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("unsupported fundamental group: {0}")]
    Unsupported(String),
    #[error("twisted commutation fails in degree {0}")]
    TwistedCommutation(usize),
    #[error("intertwining check failed on generator {0}")]
    Intertwining(usize),
    #[error("class comparison undecided: {0}")]
    Indeterminate(String),
    #[error("total map not constructible: {0}")]
    NotConstructible(String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
