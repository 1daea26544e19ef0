use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state parameter gamma = {0}: must be finite and nonnegative")]
    InvalidGamma(f64),
    #[error("basis is not orthonormal: max deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    NotOrthonormal { deviation: f64, tolerance: f64 },
    #[error("matrix is not unitary: max deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    NotUnitary { deviation: f64, tolerance: f64 },
    #[error("invalid probability weights: {0}")]
    InvalidWeights(String),
    #[error("communication budget exceeded: {party} attempted a second send in one round")]
    BudgetExceeded { party: &'static str },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
