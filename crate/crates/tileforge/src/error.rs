//! Crate-wide error type.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("generators span a rank-deficient lattice (rank {rank} < {dim})")]
    RankDeficient { rank: usize, dim: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("characteristic polynomial has a non-integer factor of degree {residual_degree}")]
    NotRationalSpectrum { residual_degree: usize },

    #[error("matrix is not a dilation: eigenvalue {eigenvalue} has modulus < 2")]
    NotDilation { eigenvalue: BigInt },

    #[error("lattice iteration did not converge after {iterations} rounds (stretched tile)")]
    NonConvergence { iterations: usize },

    #[error("point budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: BigInt, budget: u64 },

    #[error("shell certificate check `{check}` failed for eigenvalue {eigenvalue}, block size {size}")]
    CertificateFailure {
        check: &'static str,
        eigenvalue: BigInt,
        size: usize,
    },

    #[error("level set {level} escapes the supplied lattice; the lattice is not invariant")]
    NotInvariant { level: usize },
}

pub type Result<T> = std::result::Result<T, TileError>;
