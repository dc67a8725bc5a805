use thiserror::Error;

/// Errors surfaced by the library.
///
/// Domain errors (`OccupancyOutOfRange`, `SingletonOutOfRange`, bad peg
/// counts) signal invalid arguments. `GuardExceeded` and `StateCapExceeded`
/// are resource refusals: the requested computation is well defined but the
/// configured bounds forbid it. The remaining variants report arithmetic
/// situations that have no exact answer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("peg count must be at least 1")]
    InvalidPegCount,

    #[error("occupancy {mu} is outside 1..={r} for p={p}, n={n}")]
    OccupancyOutOfRange { mu: u32, r: u32, p: u32, n: u32 },

    #[error("singleton count {nu} is outside 0..={mu}")]
    SingletonOutOfRange { nu: u32, mu: u32 },

    #[error("input {value} exceeds the table guard {max}")]
    GuardExceeded { value: u64, max: u64 },

    #[error("{states} states exceed the configured cap of {cap}")]
    StateCapExceeded { states: String, cap: u64 },

    #[error("integration over {var} hit a term with zero {var}-exponent")]
    SingularOperator { var: char },

    #[error("zero raised to a negative exponent")]
    ZeroToNegativePower,

    #[error("cannot evaluate a fractional exponent exactly at a base other than 0 or 1")]
    FractionalExponent,

    #[error("within-class edge balance violated at mu={mu}: {reason}")]
    BalanceViolation { mu: u32, reason: String },

    #[error("unknown sequence name {0:?}")]
    UnknownSequence(String),

    #[error("invalid range {0:?}: expected \"A\" or \"A..B\" with A <= B")]
    InvalidRange(String),

    #[error("invalid exponent {0:?}: expected an integer, fraction \"a/b\", or decimal")]
    InvalidAlpha(String),

    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
