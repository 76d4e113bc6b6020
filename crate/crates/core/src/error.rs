use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} bodies, got {found}")]
    WrongBodyCount { expected: usize, found: usize },

    #[error("number of variables mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,

    #[error("ideal is not m-primary: variable x{var} has no pure power among the generators")]
    NotMPrimary { var: usize },

    #[error("second ideal is not contained in the first (generator {generator} escapes)")]
    NotContained { generator: String },

    #[error("degree bound must be non-negative, got {0}")]
    NegativeBound(i64),

    #[error("body has a negative coordinate in vertex {vertex}")]
    NegativeCoordinate { vertex: String },

    #[error("degree of homogenization {h} is smaller than the largest vertex coordinate sum {needed}")]
    HomogenizationTooSmall { h: u32, needed: String },

    #[error("level {p} of the body family is the zero ideal")]
    EmptyLevel { p: u32 },

    #[error("schedule must be non-empty")]
    EmptySchedule,

    #[error("schedule must be strictly increasing and positive")]
    InvalidSchedule,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Hilbert function did not stabilize below base cap {cap} (last base {last_base:?})")]
    NonStabilization { cap: u32, last_base: Vec<u32> },

    #[error("inconsistent polynomial fit: {0}")]
    InconsistentFit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error stems from malformed or mathematically invalid input,
    /// as opposed to a convergence failure or an internal fault.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NonStabilization { .. } | Error::InconsistentFit(_) | Error::Internal(_)
        )
    }

    pub fn is_convergence_error(&self) -> bool {
        matches!(self, Error::NonStabilization { .. } | Error::InconsistentFit(_))
    }
}
