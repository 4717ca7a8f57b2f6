use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size cap (tensor order, component count, grid points) would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// `S_ad·‖f‖_a < r` does not hold.
    #[error("ball condition violated: S_ad·‖f‖_a = {rho} is not below the model radius {radius}")]
    Ball { rho: f64, radius: f64 },

    /// The sampled field leaves the domain of the composition function.
    #[error("field range violation: grid max |f| = {max} is not below the model radius {radius}")]
    Range { max: f64, radius: f64 },

    #[error("scenario error: {0}")]
    Scenario(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
