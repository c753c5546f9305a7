use thiserror::Error;

/// Errors produced by state construction, sampling and scenario evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number of modes must be at least 1")]
    ZeroModes,

    #[error("mode index {mode} out of range for a {n_modes}-mode state")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("transmission {0} outside [0, 1]")]
    TransmissionOutOfRange(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid squeezing specification: {0}")]
    InvalidSqueezing(String),

    #[error("covariance matrix is not symmetric (max deviation {0:e})")]
    NotSymmetric(f64),

    #[error("covariance matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("covariance violates the uncertainty principle (min eigenvalue {0:e})")]
    Unphysical(f64),

    #[error("projected covariance is indefinite (min eigenvalue {0:e})")]
    IndefiniteProjection(f64),

    #[error("sample columns have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("Branciard relation undefined: sigma_a^2 sigma_b^2 - c_ab^2 = {0:e} < 0")]
    InvalidRegime(f64),

    #[error("invalid scenario configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
