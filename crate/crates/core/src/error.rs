use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree {0}: permutations need at least one point")]
    InvalidDegree(usize),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("cycle notation parse error: {0}")]
    Parse(String),

    #[error("empty generator list")]
    NoGenerators,

    #[error("Cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("Cayley table is not a Latin square: {0}")]
    NotLatin(String),

    #[error("Cayley table has no identity element")]
    NoIdentity,

    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("parameter {param} out of range for {name}: {reason}")]
    BadParameter {
        name: String,
        param: usize,
        reason: String,
    },

    #[error("group order {order} exceeds the automorphism cap {cap}; use a smaller group or raise the cap")]
    AutCapExceeded { order: usize, cap: usize },

    #[error("automorphism list is not closed under composition")]
    NotClosed,

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: String, cap: usize },

    #[error("block size {block} does not divide degree {degree}")]
    BlockSize { degree: usize, block: usize },

    #[error("exhaustive enumeration supports degrees 1..=9, got {0}")]
    OracleDegree(usize),

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("{0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
