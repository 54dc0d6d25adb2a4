use thiserror::Error;

/// Errors reported by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("{value} exceeds the sieve limit {limit}")]
    BeyondSieve { value: u64, limit: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u64, right: u64 },

    #[error(
        "{vertices} vertices exceed the subset cap {cap}: the scan would visit 2^{vertices} induced subcomplexes"
    )]
    SubsetCap { vertices: usize, cap: usize },

    #[error("{0} is not a vertex of the complex")]
    NotAVertex(u64),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
