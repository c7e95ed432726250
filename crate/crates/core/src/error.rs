use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Every variant carries a stable upper-case code (see [`Error::code`]) which
/// the command-line front end prints and which failed sweep points record.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NEGATIVE_RABI: Rabi frequency {name} = {value} must be >= 0")]
    NegativeRabi { name: &'static str, value: f64 },

    #[error("NEGATIVE_RATE: rate {name} = {value} must be >= 0")]
    NegativeRate { name: &'static str, value: f64 },

    #[error("NON_FINITE: parameter {name} is not finite")]
    NonFinite { name: &'static str },

    #[error("INVALID_MEDIUM: {0}")]
    InvalidMedium(String),

    #[error("SINGULAR: pivot {pivot:e} in column {column} below threshold {threshold:e}")]
    Singular {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("TRAPPED: gamma13, g41 and lambda are all zero; population is trapped in |3>")]
    Trapped,

    #[error("DIVISION_DEGENERATE: denominator magnitude {0:e} vanishes")]
    DivisionDegenerate(f64),

    #[error("DEGENERATE: both Rabi frequencies g41 and g42 are zero")]
    Degenerate,

    #[error("NO_SIGN_CHANGE: imaginary part keeps its sign on [{lo:e}, {hi:e}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("STEP_TOO_COARSE: slopes at h and h/2 differ by {relative:.3e} (relative)")]
    StepTooCoarse { relative: f64 },

    #[error("MISSING_GAMMA_SI: group index needs the reference rate gamma_SI")]
    MissingGammaSi,

    #[error("PARSE_ERROR: line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("UNKNOWN_KEY: line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("RANGE_ERROR: {0}")]
    Range(String),

    #[error("IO_ERROR: {0}")]
    Io(String),
}

impl Error {
    /// Stable error code, e.g. `"SINGULAR"`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NegativeRabi { .. } => "NEGATIVE_RABI",
            Error::NegativeRate { .. } => "NEGATIVE_RATE",
            Error::NonFinite { .. } => "NON_FINITE",
            Error::InvalidMedium(_) => "INVALID_MEDIUM",
            Error::Singular { .. } => "SINGULAR",
            Error::Trapped => "TRAPPED",
            Error::DivisionDegenerate(_) => "DIVISION_DEGENERATE",
            Error::Degenerate => "DEGENERATE",
            Error::NoSignChange { .. } => "NO_SIGN_CHANGE",
            Error::StepTooCoarse { .. } => "STEP_TOO_COARSE",
            Error::MissingGammaSi => "MISSING_GAMMA_SI",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UnknownKey { .. } => "UNKNOWN_KEY",
            Error::Range(_) => "RANGE_ERROR",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// True for failures of the physics or numerics (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::Trapped
                | Error::DivisionDegenerate(_)
                | Error::Degenerate
                | Error::NoSignChange { .. }
                | Error::StepTooCoarse { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
