use thiserror::Error;

/// Errors raised by the library. Every cap and contract violation is
/// surfaced here rather than truncated or clamped silently.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} of {requested} exceeds the configured cap {cap}")]
    SizeCap {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("malformed pairing: {0}")]
    MalformedPartition(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not in the real subspace (defect {defect:e})")]
    NonReal { defect: f64 },

    #[error("non-finite value in quadrature: {0}")]
    NonFiniteQuadrature(String),

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("incompatible measures: {0}")]
    IncompatibleMeasures(String),

    #[error("measure cannot back a representation: {0}")]
    UnsupportedMeasure(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("Fock truncation level {level} is below the word length {word_len}")]
    InsufficientTruncation { level: usize, word_len: usize },

    #[error("representation is not of the form H ⊕ H")]
    NotDoubled,

    #[error("factor {index} is not centered: |φ(p)| = {value:e}")]
    NotCentered { index: usize, value: f64 },

    #[error("factor {index} does not alternate with its predecessor")]
    NonAlternating { index: usize },

    #[error("factor {index} has a letter outside its tagged copy")]
    WrongCopy { index: usize },

    #[error("Fock vector has weight outside the first copy (norm {outside:e})")]
    Support { outside: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
