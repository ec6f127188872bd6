use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the defining map at w = {0}")]
    Pole(String),

    #[error("arity error: {0}")]
    Arity(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    #[error("no admissibility transition in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("predicate is not monotone in beta over the sampled bracket: {0}")]
    Monotonicity(String),

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("series with zero constant term is not invertible")]
    NotInvertible,

    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
