use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a group needs at least one cyclic factor")]
    EmptyModuli,
    #[error("modulus {0} is smaller than 2")]
    ModulusTooSmall(u64),
    #[error("group order overflows the integer range")]
    OrderOverflow,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("residue {value} is not reduced modulo {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },
    #[error("maps live on different groups")]
    GroupMismatch,
    #[error("table entry {entry} at position {position} is out of range")]
    InvalidTable { position: usize, entry: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("matrix operations need all moduli equal")]
    NonHomogeneousGroup,
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("polynomial is not irreducible over Z2")]
    NotIrreducible,
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("rank {0} is smaller than 2")]
    RankTooSmall(u64),
    #[error("{0} is not odd")]
    NotOdd(u64),
    #[error("{0} is even")]
    EvenInput(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("unknown proposition {0:?}")]
    UnknownProposition(String),
    #[error("method not applicable: {0}")]
    MethodInapplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("constructed witness failed verification: {0}")]
    UnverifiedWitness(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
