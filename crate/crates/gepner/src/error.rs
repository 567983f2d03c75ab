use thiserror::Error;

/// Errors surfaced by the library. All arithmetic is exact, so there are no
/// tolerance or rounding failures; everything here is a domain violation, a
/// size-cap refusal, or a falsified assumption.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {0} outside the alphabet {{1,2,3}}")]
    LetterOutOfRange(u32),

    #[error("{what} requires {needed}, got {got}")]
    Domain {
        what: &'static str,
        needed: &'static str,
        got: String,
    },

    #[error("{what} = {requested} exceeds the cap {cap} ({reason}); pass --unsafe-limits to override")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
        reason: &'static str,
    },

    #[error("duplicate interpolation abscissa n = {0}")]
    DuplicateAbscissa(i64),

    #[error("interpolation needs at least one point")]
    NoPoints,

    #[error("insufficient points: fitting degree {degree} with {guards} guard point(s) needs {needed} values, got {got}")]
    InsufficientPoints {
        degree: usize,
        guards: usize,
        needed: usize,
        got: usize,
    },

    #[error("guard point failed: value at n = {n} does not lie on the fitted degree-{degree} polynomial")]
    GuardFailure { n: i64, degree: usize },

    #[error("standardized moments undefined: variance is zero")]
    ZeroVariance,

    #[error("classification needs at least one even order >= 4")]
    NoEvenOrders,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
