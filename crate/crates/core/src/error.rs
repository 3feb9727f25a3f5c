use thiserror::Error;

/// Errors raised by the curve-complex, cover and Teichmüller routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("operation not supported for surface model {0}")]
    UnsupportedModel(&'static str),
    #[error("degenerate pair: both curves are {0}")]
    DegeneratePair(String),
    #[error("slope {slope} exceeds oracle bound {bound}")]
    OutOfRange { slope: String, bound: u64 },
    #[error("curve {0} equals the annular axis and misses the annulus")]
    ProjectionEmpty(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid degree {0}")]
    InvalidDegree(u64),
    #[error("invalid epsilon {epsilon}: must lie in (0, {limit})")]
    InvalidEpsilon { epsilon: f64, limit: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("threshold {0} too small: antichains need T > 3")]
    ThresholdTooSmall(i64),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("malformed graph maps: {0}")]
    MalformedMaps(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
