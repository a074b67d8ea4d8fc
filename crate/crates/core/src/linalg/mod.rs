//! Exact linear algebra over prime fields, canonical subspaces of `F_q^t`,
//! and Gaussian binomial combinatorics.

mod field;
mod matrix;
mod qbinom;
mod subspace;

pub use field::PrimeField;
pub use matrix::{FqMatrix, Rref};
pub use qbinom::{
    binom2, cauchy_identities_check, count_subspaces_containing, count_subspaces_containing_by_enumeration,
    gaussian_binomial, q_power,
};
pub(crate) use subspace::{combinations, Counter};
pub use subspace::{enumerate_all_subspaces, enumerate_subspaces, row_kernel, Subspace};
