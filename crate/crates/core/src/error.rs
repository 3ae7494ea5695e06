use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::SignatureTriple;

/// A Gram relation `(Mᵀ·G·M)[row][col] = G[row][col]` that a candidate isometry breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramViolation {
    pub row: usize,
    pub col: usize,
    pub found: BigInt,
    pub expected: BigInt,
}

impl std::fmt::Display for GramViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(M^T G M)[{}][{}] = {}, expected {}",
            self.row, self.col, self.found, self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("basis columns are linearly dependent")]
    DependentBasis,

    #[error("rescaling factor must be nonzero")]
    ZeroScale,

    #[error("matrix is not an isometry: {0}")]
    NotIsometry(GramViolation),

    #[error("matrix is not an isometry: determinant {0} is not +1 or -1")]
    NotUnimodular(BigInt),

    #[error("cannot reflect in a vector of norm zero")]
    IsotropicReflection,

    #[error("reflection in a vector of norm {norm} is not integral")]
    NonIntegralReflection { norm: BigInt },

    #[error("Douady lattices need n >= 2, got {0}")]
    InvalidOrder(i64),

    #[error("marked class does not define a Douady lattice: {0}")]
    InvalidMarking(String),

    #[error("isometry moves the class delta")]
    NotNatural,

    #[error("isometry belongs to a different lattice")]
    ForeignIsometry,

    #[error("positive cone precondition violated: {0}")]
    ConePrecondition(String),

    #[error("group generated exceeds {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("lattice is degenerate")]
    DegenerateLattice,

    #[error("sublattice is not stable under the group")]
    NotStable,

    #[error("Neron-Severi signature {0} matches no known type")]
    UnknownNsType(SignatureTriple),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
