//! Exact linear algebra over the rationals with a multi-modular fast path.

pub mod bareiss;
pub mod kernel;
pub mod matrix;
pub mod modular;
pub mod reconstruct;
pub mod scalar;

pub use kernel::{kernel, rank, span_contains, span_rank, Certification, KernelBasis, KernelSolver, Strategy};
pub use matrix::{ExactMatrix, MatrixJson, SparseRow};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("system must have at least one row and one column")]
    EmptySystem,
    #[error("rational reconstruction failed within a budget of {budget} primes")]
    ReconstructionFailure { budget: usize },
    #[error("fewer than two primes agreed on the rank (discarded {discarded:?}, budget {budget})")]
    DimensionMismatch { discarded: Vec<u64>, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
