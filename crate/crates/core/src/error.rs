use thiserror::Error;

/// Errors raised by the library. Mathematical findings (failed relations,
/// missing decompositions) are reported as data, not through this type,
/// except where an operation cannot produce any result at all.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{a} is not a unit modulo {n}")]
    NotCoprime { a: i64, n: u64 },

    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },

    #[error("level {0} is congruent to 2 mod 4; use {half} instead", half = .0 / 2)]
    LevelTwoModFour(u64),

    #[error("invalid level {0}")]
    InvalidLevel(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {prime} ramifies in the field (conductor {conductor})")]
    Ramified { prime: u64, conductor: u64 },

    #[error("fields are not nested")]
    NotNested,

    #[error("element does not lie in the field: {0}")]
    NotInField(String),

    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group ring elements live over different groups")]
    GroupMismatch,

    #[error("expected rational scalars but found an irrational coefficient")]
    NotRational,

    #[error("expected integer scalars but found a non-integral coefficient")]
    NotIntegral,

    #[error("interval arithmetic could not certify the result at {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("undecided at precision cap of {bits} bits")]
    Undecided { bits: u32 },

    #[error("refusing level {level}: {reason}")]
    Refused { level: u64, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing component for field {0}")]
    MissingComponent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
