//! Exact linear algebra over the rationals.
//!
//! Everything downstream reduces to ranks, kernels and intersections of
//! sparse rational matrices; the incremental [`Echelon`] is the workhorse.

mod matrix;
mod sparse;
mod subspace;

pub use matrix::{kernel_basis, rref, RationalMatrix, DENSE_COLUMN_LIMIT};
pub use sparse::{axpy, normalize, scale, Echelon, SparseVec};
pub use subspace::{intersect_spans, Subspace};
