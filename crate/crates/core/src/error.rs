use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },

    #[error("duplicate exponent {exponent} in series")]
    DuplicateExponent { exponent: String },

    /// The input is well-formed but violates a requirement of the operation
    /// (for example a curve that is not tangent to the line).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An identity that holds for every valid input failed. This always
    /// indicates a bug; the message carries the offending state.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::ZeroDenominator { .. } | Error::DuplicateExponent { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
