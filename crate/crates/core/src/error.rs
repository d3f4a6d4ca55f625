use thiserror::Error;

/// Errors raised when an input violates an operation's precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not congruent to 1 modulo 4")]
    NotOneModFour(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("{what} = {value} exceeds the supported bound {bound}")]
    TooLarge {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("coordinate {0} exceeds the 62-bit bound")]
    CoordinateOutOfRange(i64),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("slope {mu} is not in 0..{p}")]
    SlopeOutOfRange { p: u64, mu: u64 },
    #[error("slope {0} has no windmill basis (degenerate slopes 0, 1, p-1 and infinity)")]
    DegenerateSlope(String),
    #[error("vector {0} is not in the lattice")]
    NotInLattice(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("({a}, {b}, {c}, {d}) is not a solution for p = {p}: {reason}")]
    InvalidSolution {
        p: u64,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        reason: &'static str,
    },
    #[error("n must be at least 1")]
    NonPositive,
    #[error("solution set is not closed under the Klein four-group action")]
    NotClosed,
}

pub type Result<T> = std::result::Result<T, Error>;
