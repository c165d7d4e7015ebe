use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A polynomial operation received an argument in the wrong convention
    /// (reduced vs unreduced, disconnected wedge summand, ...).
    #[error("invalid polynomial argument: {0}")]
    Polynomial(String),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: i64, cap: u32 },

    #[error("invalid space expression: {0}")]
    InvalidSpace(String),

    #[error("invalid action expression: {0}")]
    InvalidAction(String),

    #[error("invalid ring presentation: {0}")]
    InvalidRing(String),

    #[error("simplicial complex error: {0}")]
    Complex(String),

    #[error("oracle does not support {0}")]
    OracleUnsupported(String),

    /// Raised when a fixed-set report breaks the rank inequality or the Euler
    /// characteristic equality. Always a defect in a rule or primitive.
    #[error("consistency violation: {0}")]
    Violation(String),

    /// The requested slice is not linear in its free argument.
    #[error("slice is nonlinear: {0}")]
    Nonlinear(String),

    #[error("numeric check failed: {0}")]
    Numeric(String),

    #[error("{kind} at line {line}, column {column} near `{token}`: {message}")]
    Parse {
        kind: ParseErrorKind,
        line: usize,
        column: usize,
        token: String,
        message: String,
    },

    #[error("unknown gallery case `{0}`")]
    UnknownCase(String),

    #[error("invalid parameters: {0}")]
    Parameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::Syntax => f.write_str("syntax error"),
            ParseErrorKind::Semantic => f.write_str("semantic error"),
        }
    }
}
