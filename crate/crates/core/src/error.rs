use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The root finder was given an interval without a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("no convergence after {iterations} iterations: {context}")]
    Convergence { iterations: usize, context: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty result: {0}")]
    Empty(String),

    /// Lattice range `nΘ ∩ Z` is empty; `suggested_n` is the smallest level
    /// that has one, when it could be found.
    #[error("nΘ ∩ Z is empty at n = {n}; smallest valid level: {suggested_n:?}")]
    EmptyRange { n: u32, suggested_n: Option<u32> },

    #[error("level n = {n} exceeds the enumeration cap {cap}")]
    Cap { n: u32, cap: u32 },

    #[error("enumeration would visit more than {limit} candidates")]
    TooManyCandidates { limit: u64 },

    #[error("no Zariski decomposition: a + b = {sum} < 1 (D is not pseudo-effective)")]
    NoDecomposition { sum: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
