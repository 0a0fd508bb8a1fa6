use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("entry {0} appears more than once in the transposition sequence")]
    RepeatedEntry(u64),

    #[error("bound {bound} is too small, need at least {needed}")]
    BoundTooSmall { needed: u64, bound: u64 },

    #[error("scan from {point} did not settle within fuel {fuel}")]
    FuelExhausted { point: u64, fuel: u64 },

    /// The base set is declared to be a tail set beyond some index, so the
    /// point provably has no preimage.
    #[error("{point} has no preimage: the rearrangement is not onto")]
    NotOnto { point: u64 },

    #[error("permutation has no inverse oracle")]
    NoInverse,

    #[error("sets agree on [0, {bound}]")]
    NoDifference { bound: u64 },

    #[error("transposition needs i < j, got ({i} {j})")]
    BadOrder { i: u64, j: u64 },

    #[error("tuple contains a repeated entry {0}")]
    DuplicateEntries(u64),

    #[error("tuples differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("mapping is not a bijection of its domain")]
    NotABijection,

    #[error("expansion 0.111... is 1, outside [0, 1)")]
    AllOnes,

    #[error("carry into digit {position} unresolved{}", match .iteration { Some(k) => format!(" at orbit step {k}"), None => String::new() })]
    Unresolved {
        position: usize,
        iteration: Option<usize>,
    },

    #[error("point has {got} digits, binning needs {needed}")]
    TooFewDigits { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
