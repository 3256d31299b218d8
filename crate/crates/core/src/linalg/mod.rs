//! Exact sparse linear algebra over a field.
//!
//! All routines are generic over [`Field`]; the crate-level alias
//! [`crate::QMatrix`] instantiates them over the rationals.

mod complex;
mod echelon;
mod elim;
mod lincomb;
mod matrix;
mod scalar;

pub use complex::{homology_dims, ChainComplexSlice};
pub use echelon::EchelonBasis;
pub use elim::{kernel_basis, rank, rank_dense_reference};
pub use lincomb::LinComb;
pub use matrix::{SparseMatrix, SparseVector};
pub use scalar::Field;
