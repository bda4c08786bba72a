use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coordinate is not finite: ({x}, {y})")]
    NonFiniteCoordinate { x: f64, y: f64 },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("point ({x}, {y}) is {distance:e} away from the homothet boundary")]
    PointNotOnBoundary { x: f64, y: f64, distance: f64 },

    #[error("no homothet of the shape has both points on its boundary")]
    DegenerateDirection,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("general position violated for pair ({p}, {q}): {detail}")]
    GeneralPositionViolation { p: usize, q: usize, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("instance generation failed: {0}")]
    GenerationFailed(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
