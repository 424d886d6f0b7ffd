use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant maps onto one CLI exit status via [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("Weyl group enumeration exceeded the cap of {0} elements")]
    WeylCap(usize),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("bad theory: {0}")]
    BadTheory(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BadTheory(_) => 3,
            Error::Unsupported(_) | Error::WeylCap(_) => 4,
            Error::Invariant(_) => 5,
            _ => 2,
        }
    }

    /// Short machine-readable tag used in JSON error envelopes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension-mismatch",
            Error::InvalidRootDatum(_) => "invalid-root-datum",
            Error::WeylCap(_) => "weyl-cap",
            Error::ContextMismatch(_) => "context-mismatch",
            Error::Invalid(_) => "invalid-input",
            Error::Parse { .. } => "parse-error",
            Error::Schema(_) => "schema-error",
            Error::BadTheory(_) => "bad-theory",
            Error::Unsupported(_) => "unsupported",
            Error::Invariant(_) => "invariant-violation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
