use thiserror::Error;

/// Errors raised by the geometric and algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanoError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector has no primitivity")]
    ZeroVector,

    #[error("vector {0} is not primitive")]
    NotPrimitive(String),

    #[error("rays {0} and {1} are linearly dependent")]
    ParallelRays(String, String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),

    #[error("the origin is not in the interior of the polytope")]
    OriginNotInterior,

    #[error("point set is degenerate: its convex hull is lower-dimensional")]
    DegenerateHull,

    #[error("not enough points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("polytope is not simplicial")]
    NotSimplicial,

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("invalid cyclic quotient type 1/{m}({q})")]
    InvalidQuotient { m: i64, q: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("discriminant det(λA + μB) vanishes identically")]
    DegeneratePencil,

    #[error("verification failed for {surface}: {property}")]
    Verification { surface: String, property: String },
}

pub type Result<T> = std::result::Result<T, FanoError>;
