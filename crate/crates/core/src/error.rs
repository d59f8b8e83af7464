use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow while building {0}")]
    Overflow(&'static str),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements live in different algebras: A({left}) vs A({right})")]
    AmbientMismatch { left: usize, right: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("brute-force enumeration refused for d = {d} (cap is {cap})")]
    OracleCap { d: usize, cap: usize },

    #[error("cache file: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
