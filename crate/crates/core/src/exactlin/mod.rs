//! Exact linear algebra over ℚ: rationals, sparse matrices, row reduction
//! and homology of a single spot of a chain complex.

mod rational;
mod reduce;
mod sparse;

pub use rational::{ParseRationalError, Rational};
pub use reduce::{column_space, homology_at, rank, rref, solve, Echelon, Rref, SubquotientBasis};
pub use sparse::{axpy, collect_sparse, dot_dense, scale, SparseMatrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("consecutive differentials do not compose to zero")]
    CompositionNonzero,
    #[error("vector is not a cycle")]
    NotACycle,
}
