use thiserror::Error;

/// Errors produced while building, loading, or combining automata.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {0:?}")]
    InvalidSymbol(char),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("regex syntax error at byte {offset}: {message}")]
    Regex { offset: usize, message: String },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid homomorphism: {0}")]
    Homomorphism(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
