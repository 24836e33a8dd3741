use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient dimension n = {0} exceeds 63 (simplices must fit in one machine word)")]
    AmbientTooLarge(u32),

    #[error("simplex {0} is not a simplex of the ambient {1}")]
    OutsideAmbient(Simplex, String),

    #[error("the empty vertex set is not a simplex")]
    EmptySimplex,

    #[error("operation `{0}` requires the boundary ambient (the full vertex set excluded)")]
    RequiresBoundary(&'static str),

    #[error("operation `{0}` requires a face-closed complex")]
    NotFaceClosed(&'static str),

    #[error("complexes live in different ambients ({0} vs {1})")]
    AmbientMismatch(String, String),

    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),

    #[error("the link of {0} has no ambient vertices left")]
    EmptyLinkAmbient(Simplex),

    #[error("lower complex is not contained in the upper complex")]
    NotNested,

    #[error("inclusion-exclusion over {terms} sets exceeds the guard of {guard}; use a Monte Carlo estimate instead")]
    GuardExceeded { terms: usize, guard: usize },

    #[error("enumeration over {0} ambient simplices is too large")]
    EnumerationTooLarge(u64),

    #[error("invalid probability {value} for {what}")]
    InvalidProbability { what: String, value: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("exponent profile violates genericity: {0}")]
    NonGeneric(String),

    #[error("simplex {0} has zero probability of appearing")]
    ZeroProbability(Simplex),

    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
