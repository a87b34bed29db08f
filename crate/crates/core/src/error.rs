use thiserror::Error;

use crate::weierstrass::Refusal;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element whose norm is only bounded above cannot be certified nonzero.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("incompatible norm domains: exponents carry different irrational scales")]
    IncompatibleScales,

    #[error("base ring mismatch: {0}")]
    ContextMismatch(String),

    /// A comparison straddles a threshold at the working precision.
    #[error("indeterminate at working precision: {0}")]
    Indeterminate(String),

    #[error("not distinguished: {0}")]
    NotDistinguished(Refusal),

    #[error("contraction not certified: {0}")]
    ContractionFailure(String),

    #[error("precision exhausted after {iterations} iterations (residual {residual})")]
    PrecisionExhausted { iterations: u64, residual: String },

    #[error("not a unit: {0}")]
    NotUnit(String),

    #[error("root denominator overflow: need denominator p^{needed}, bound is p^{bound}")]
    RootDenominatorOverflow { needed: u32, bound: u32 },

    #[error("Witt length {requested} exceeds the configured ceiling {ceiling}")]
    WittLengthCeiling { requested: usize, ceiling: usize },

    #[error("tie between terms {0:?}: no strictly dominant term")]
    Tie(Vec<i64>),

    #[error("coefficient at p-level {0} is not a monomial")]
    NonMonomial(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
