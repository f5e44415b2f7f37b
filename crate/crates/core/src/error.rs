use thiserror::Error;

use crate::quadrature::QuadError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("an incoherent pair is a mixed state and has no single wavefunction")]
    NoPureState,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("the wide-target limit has no pointwise density")]
    WideLimitHasNoDensity,
    #[error("event density {value:e} is negative beyond its error estimate {err_est:e}")]
    NegativeTotal { value: f64, err_est: f64 },
    #[error("odd cat separation r0/sigma_perp = {0:e} is below the 1e-4 threshold")]
    InvalidCatSeparation(f64),
    #[error("event density carries no target width; cannot convert to a cross section")]
    MissingSigma,
    #[error("asymmetry denominator vanishes")]
    DegenerateDenominator,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("distribution is flat over the grid (max/min = {0})")]
    FlatDistribution(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
