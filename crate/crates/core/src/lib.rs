//! Hamming isometries of linear codes over matrix-module alphabets.
//!
//! The alphabet is `A = M_{m x k}(F_q)` viewed as a left module over
//! `R = M_m(F_q)`. A code is given by a parametrization `λ: W -> A^n` with
//! `W = M_{m x t}(F_q)`; each coordinate is a right multiplication by a
//! `t x k` matrix. Submodules of `W` are encoded by subspaces of `F_q^t`
//! (their row supports), which turns the indicator-function equation that
//! decides extendability into finite integer bookkeeping.

pub mod budget;
pub mod cli;
pub mod error;
pub mod forge;
pub mod fourier;
pub mod linalg;
pub mod mds;
pub mod modcode;

pub use budget::Budget;
pub use error::{ModextError, Result};
