use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation of length {0} is out of range (1..={max})", max = crate::perm::MAX_ORDER)]
    OrderOutOfRange(usize),
    #[error("not a permutation of 1..={n}: {values:?}")]
    NotBijection { n: usize, values: Vec<u32> },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("transition t_{index} is invalid for permutations of length {n}")]
    TransitionOutOfRange { index: usize, n: usize },
    #[error("cannot parse permutation from {0:?}")]
    ParsePermutation(String),

    #[error("codewords {first} and {second} coincide")]
    DuplicateCodeword { first: usize, second: usize },
    #[error("code is marked cyclic but its last transition does not return to the start")]
    NotClosed,
    #[error("a cyclic code needs at least one transition")]
    EmptyCyclic,
    #[error("operation requires a cyclic code")]
    NotCyclic,
    #[error("start permutation has length {start}, code declares n = {n}")]
    StartLength { start: usize, n: usize },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("{perm} is not a codeword of {family}")]
    NotACodeword { perm: String, family: &'static str },
    #[error("rank {rank} is out of range (code size {size})")]
    RankOutOfRange { rank: u64, size: u64 },
    #[error("construction failed validation: {0}")]
    Construction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid octal transition string: {0}")]
    Octal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
