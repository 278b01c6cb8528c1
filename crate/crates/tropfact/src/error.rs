//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum TropError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("planar basis is singular at (k,n)=({0},{1})")]
    SingularBasis(u32, u32),
    #[error("decorated ordered set partition is not in the bijection's image: {0}")]
    NotInBijectionImage(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
    #[error("kinematic point violates momentum conservation")]
    NotConserving,
    #[error("slice puts kinematics on a pole: {0}")]
    OnPole(String),
    #[error("positivity violated in minor expansion: {0}")]
    NonPositiveMinor(String),
    #[error("propagators are linearly dependent")]
    DependentPropagators,
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for TropError {
    fn from(e: std::io::Error) -> Self {
        TropError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for TropError {
    fn from(e: serde_json::Error) -> Self {
        TropError::Io(e.to_string())
    }
}
