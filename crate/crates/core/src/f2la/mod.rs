//! Linear algebra over GF(2): bit-packed vectors and matrices, elimination
//! with caller-chosen column order, right inverses, kernels and the alist
//! file format.

pub mod alist;
mod elim;
mod matrix;
mod vec;

#[allow(unused_imports)]
pub(crate) use elim::eliminate_unchecked;
pub use elim::{
    eliminate, eliminate_natural, inverse, kernel_basis, rank, right_inverse, right_inverse_from,
    solve, solve_columns, EliminationResult, RowBasis,
};
pub use matrix::{F2Matrix, SparseView};
pub use vec::F2Vec;
