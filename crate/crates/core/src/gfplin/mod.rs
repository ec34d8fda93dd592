//! Exact linear algebra over the prime field GF(p).
//!
//! Everything here is integer arithmetic on machine-word residues; there is
//! no floating point and no extension-field support. Subspaces are kept in
//! reduced row echelon form so that equality, hashing, and file output are
//! all structural.

mod enumerate;
mod matrix;
mod scalar;
mod subspace;

pub use enumerate::{
    enumerate_subspaces, gaussian_binomial, subspace_partitions, total_subspaces, PartitionIter,
    PartitionSpec,
};
pub use matrix::FieldMatrix;
pub use scalar::{FieldScalar, Prime};
pub use subspace::Subspace;

use thiserror::Error;

/// Errors from field and subspace operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix shape mismatch: {rows}x{cols} expected, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("index out of range: k = {k}, bound = {bound}")]
    OutOfRange { k: usize, bound: usize },
}
