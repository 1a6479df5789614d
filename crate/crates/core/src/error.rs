use thiserror::Error;

/// Errors surfaced by the library. Each variant maps to a distinct
/// category so callers (notably the CLI) can tell malformed input from
/// axiom failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Structurally malformed input: missing keys, unknown labels, bad rationals.
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    /// Well-formed input violating an algebraic identity.
    #[error("axiom violated: {0}")]
    Axiom(String),
    /// Mutually inconsistent arguments (containment, dimensions).
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    /// Input outside the supported class for the requested operation.
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// A degree window too small for the requested construction.
    #[error("degenerate window: {0}")]
    DegenerateWindow(String),
    /// A requested quantity is not stable at the given truncation bounds.
    #[error("unstable: {0}")]
    Unstable(String),
}

impl Error {
    pub fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { location: location.into(), message: message.into() }
    }

    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Schema { .. } => "schema",
            Error::Axiom(_) => "axiom",
            Error::Inconsistent(_) => "inconsistent",
            Error::Unsupported(_) => "unsupported",
            Error::DegenerateWindow(_) => "degenerate-window",
            Error::Unstable(_) => "unstable",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
