use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two roots of the cubic coincide (or a root is not finite).
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    /// `beta` hits a pole of the order-8 radicals (0, 1 or -1).
    #[error("invalid beta {0}: the order-8 radicals have a pole there")]
    InvalidBeta(String),

    #[error("point is not on the curve: {0}")]
    OffCurve(String),

    /// Two addends share an x-coordinate but their y-coordinates are
    /// neither equal nor opposite.
    #[error("inconsistent addends: {0}")]
    InconsistentAddends(String),

    #[error("division polynomial index {0} is outside 1..=16")]
    UnsupportedIndex(u32),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateCurve(_) => "DegenerateCurve",
            Error::InvalidBeta(_) => "InvalidBeta",
            Error::OffCurve(_) => "OffCurve",
            Error::InconsistentAddends(_) => "InconsistentAddends",
            Error::UnsupportedIndex(_) => "UnsupportedIndex",
            Error::Parse(_) => "ParseError",
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegenerateCurve(_) | Error::InvalidBeta(_) => 2,
            Error::OffCurve(_) | Error::InconsistentAddends(_) => 3,
            Error::UnsupportedIndex(_) | Error::Parse(_) => 4,
        }
    }
}
