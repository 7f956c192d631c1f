use thiserror::Error;

use crate::numeric::quad::QuadError;
use crate::numeric::roots::RootError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the admissible domain")]
    Domain { what: &'static str, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("metric has no geodesic polar profile about the requested base")]
    UnsupportedBase,
    #[error("curvature sign is indefinite on [{lo}, {hi}]")]
    IndefiniteCurvature { lo: f64, hi: f64 },
    #[error("geodesic integration failed: {0}")]
    Integration(&'static str),
    #[error("phase unwrapping failed: {0}")]
    PhaseUnwrap(&'static str),
    #[error("isometry has a pole at a grid node")]
    Pole,
    #[error("operation is not available for this target metric")]
    UnsupportedMetric,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
