use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. Variant names are what the CLI prints.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("InsufficientData: source has {available} letters, {requested} requested")]
    InsufficientData { available: usize, requested: usize },

    #[error("NotAFactorInWindow: word does not occur inside the first {window} letters")]
    NotAFactorInWindow { window: usize },

    #[error("NotPinnedWithinBound: no stable first occurrence at offset {offset} up to length {n_max}")]
    NotPinnedWithinBound { offset: usize, n_max: usize },

    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),

    #[error("WindowExhausted: window of {window} letters exhausted")]
    WindowExhausted { window: usize },

    #[error("WindowInsufficient: {0}")]
    WindowInsufficient(String),

    #[error("NotAZiminFactor: {0}")]
    NotAZiminFactor(String),

    #[error("HypothesisViolated: {0}")]
    HypothesisViolated(String),

    #[error("CapExceeded: {0}")]
    CapExceeded(String),

    #[error("TooManyParts: {0} parts (at most 20)")]
    TooManyParts(usize),

    #[error("InvalidWord: {0}")]
    InvalidWord(String),

    #[error("AlphabetMismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: String, found: String },

    #[error("OutsideDomain: {0}")]
    OutsideDomain(String),

    #[error("Parse: {0}")]
    Parse(String),

    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// The bare variant name, e.g. `NotAZiminFactor`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InsufficientData { .. } => "InsufficientData",
            Error::NotAFactorInWindow { .. } => "NotAFactorInWindow",
            Error::NotPinnedWithinBound { .. } => "NotPinnedWithinBound",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::WindowExhausted { .. } => "WindowExhausted",
            Error::WindowInsufficient(_) => "WindowInsufficient",
            Error::NotAZiminFactor(_) => "NotAZiminFactor",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::CapExceeded(_) => "CapExceeded",
            Error::TooManyParts(_) => "TooManyParts",
            Error::InvalidWord(_) => "InvalidWord",
            Error::AlphabetMismatch { .. } => "AlphabetMismatch",
            Error::OutsideDomain(_) => "OutsideDomain",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
