use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library. Variants are grouped by the operation that
/// produces them; the CLI maps every variant to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry 0 is not allowed in a set")]
    ZeroEntry,
    #[error("cube sum {cube_sum} differs from squared sum {sum_squared}")]
    NotCs { cube_sum: BigInt, sum_squared: BigInt },
    #[error("identity holds but the set is excluded (contains both {0} and -{0})")]
    Inadmissible(BigInt),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("cube sum {cube_sum} does not divide squared sum {sum_squared}")]
    NotDivisible { cube_sum: BigInt, sum_squared: BigInt },
    #[error("cube sum is zero; verify the set directly")]
    ZeroCubeSum,
    #[error("invalid set literal: {0}")]
    Parse(String),

    #[error("D = {0} is a perfect square")]
    SquareD(BigInt),
    #[error("D must be positive, got {0}")]
    NonPositiveD(BigInt),
    #[error("N must be nonzero")]
    ZeroN,
    #[error("({x}, {y}) does not solve {equation}")]
    NotASolution { x: BigInt, y: BigInt, equation: String },
    #[error("x^2 - {d} y^2 = {n} has no solutions within the search bound")]
    Exhausted { d: BigInt, n: BigInt },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("expected exactly one distinct positive set of size {n}, found {found}")]
    AssertionViolation { n: usize, found: usize },

    #[error("argument must be positive, got {0}")]
    NonPositive(i128),

    #[error("sum {0} admits no single-entry extension")]
    NoExtension(BigInt),
    #[error("({u}, {v}) is not a two-entry extension for sum {sum}")]
    InvalidRep { u: BigInt, v: BigInt, sum: BigInt },

    #[error("Pythagorean tuple has a zero entry")]
    DegenerateTuple,
    #[error("invalid Pythagorean tuple: {0}")]
    InvalidTuple(String),
    #[error("tuples have different arity ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("no Frolov construction is known for {0} entries")]
    UnsupportedSize(usize),
    #[error("Frolov construction produced {got} entries, expected {want}")]
    SizeMismatch { want: usize, got: usize },

    #[error("catalog line {line}: {reason}")]
    VerificationFailed { line: usize, reason: String },
    #[error("catalog I/O: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
