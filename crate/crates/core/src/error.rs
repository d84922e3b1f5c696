use thiserror::Error;

/// Errors surfaced by matrix construction, search, sampling and stream analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("{what} exceeds the supported limit {limit} (requested {requested})")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("matrix is not Hadamard")]
    NotHadamard,

    #[error("matrix is not complex Hadamard")]
    NotComplexHadamard,

    #[error("matrix failed the unitarity check (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },

    #[error("stream has alphabet {alphabet}, expected a binary stream")]
    NotBinary { alphabet: u32 },

    #[error("stream of {len} symbols is too short (need at least {min})")]
    StreamTooShort { len: usize, min: usize },

    #[error("alphabet {alphabet} cannot be encoded as single ASCII digits")]
    AlphabetTooLarge { alphabet: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn format(line: usize, reason: impl Into<String>) -> Error {
        Error::Format {
            line,
            reason: reason.into(),
        }
    }
}
