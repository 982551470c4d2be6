use thiserror::Error;

/// Errors produced by the simulation and solver layers.
#[derive(Error, Debug)]
pub enum Error {
    #[error("coordinate {value} outside [0, {side}) in dimension {axis}")]
    CoordinateOutOfRange { value: f64, side: f64, axis: usize },

    #[error("unsupported dimension {0} (expected 1 or 2)")]
    UnsupportedDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("boundary error: {0}")]
    Boundary(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("solver failed to converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("bracket error: {0}")]
    Bracket(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
