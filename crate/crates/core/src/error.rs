use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

fn position(line: usize, column: usize) -> String {
    if line == 0 && column == 0 {
        String::new()
    } else {
        format!(" at line {line}, column {column}")
    }
}

/// Errors surfaced by the verification engine.
///
/// Domain violations carry the predicate that failed so callers (and the CLI)
/// can name it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("expression contains a non-integer exponent")]
    NonIntegerExponent,

    #[error("negative base with fractional exponent")]
    NegativeBaseFractionalExponent,

    #[error("zero base with negative exponent")]
    ZeroToNegativePower,

    #[error("domain violation: requires {predicate}")]
    Domain { predicate: String },

    #[error("sides do not form a triangle")]
    NotATriangle,

    #[error("product of arguments is not 1")]
    ProductNotOne,

    #[error("infeasible search spec: {0}")]
    InfeasibleSpec(String),

    /// Line and column are 1-based; (0, 0) means no position is known and
    /// the rendering omits it.
    #[error("parse error{}: {message}", position(*line, *column))]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Certification failed within its budget; for positivity checks the
    /// message names the deepest offending subinterval.
    #[error("not certified: {0}")]
    NotCertified(String),
}

impl Error {
    pub fn domain(predicate: impl Into<String>) -> Self {
        Error::Domain {
            predicate: predicate.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: 0,
            column: 0,
            message: message.into(),
        }
    }

    pub fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
