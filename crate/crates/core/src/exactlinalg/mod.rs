//! Exact scalars over Q and F_p, sparse matrices, and the canonical affine solver that
//! every other module reduces its linear questions to.

mod matrix;
mod scalar;

pub use matrix::{add_scaled, nullspace_basis, solve_affine_system, AffineSolution, Echelon, Matrix, SparseRow};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("cannot read {0:?} as a field element")]
    BadLiteral(String),
}
