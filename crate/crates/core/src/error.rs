use thiserror::Error;

/// Errors raised by the kernel, the move engine and everything built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point set is not full-dimensional (affine dimension {found}, expected {expected})")]
    NotFullDimensional { found: i64, expected: usize },
    #[error("unsupported ambient dimension {0} (supported: 1..=8)")]
    UnsupportedDimension(usize),
    #[error("point {0} is not a vertex of the polytope")]
    NotAVertex(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("polytope is not contained in the box [0,{0}]^d")]
    OutOfBox(i64),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("polytope is not a simplex")]
    NotASimplex,
    #[error("vertex sets are not jointly in convex position")]
    NotInConvexPosition,
    #[error("polygon is not a pentagon")]
    NotAPentagon,
    #[error("polygon is not flat")]
    NotFlat,
    #[error("polygon is not strongly flat")]
    NotStronglyFlat,
    #[error("enumeration budget exceeded: {0}")]
    TooLarge(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value does not fit the 64-bit coordinate range")]
    Overflow,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
