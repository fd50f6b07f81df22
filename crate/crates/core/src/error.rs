use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit below 2^63")]
    ModulusTooLarge(u64),
    #[error("GF({p}) has no element of order >= {min_order}")]
    OrderUnavailable { p: u64, min_order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for dimension {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("duplicate exponent {0}")]
    DuplicateExponent(usize),
    #[error("singular system: nodes are not distinct")]
    SingularSystem,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element order {order} is smaller than required {required}")]
    OrderTooSmall { order: u64, required: u64 },
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("input matrix is singular")]
    SingularInput,
    #[error("cannot place {k} errors in {cells} cells")]
    TooManyErrors { k: usize, cells: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
