use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("tensor power needs n >= 1")]
    ZeroTensorPower,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("source is not registered as a tensor power of the given complexes")]
    NotTensorPower,
    #[error("differential does not square to zero")]
    NotDifferential,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("malformed data: {0}")]
    Format(String),
}
