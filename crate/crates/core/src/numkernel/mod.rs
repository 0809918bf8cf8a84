//! Dense complex linear algebra for the small matrices that channel algebra
//! needs: products, Kronecker products, partial traces, Hermitian
//! eigendecomposition, SVD and PSD matrix functions.
//!
//! Every routine is a pure function on immutable inputs and is deterministic:
//! equal inputs give bit-identical outputs, including eigenvector and
//! singular-vector phases.

mod eig;
mod funcs;
mod matrix;
mod svd;

pub use eig::{herm_eig, HermEig, HERMITIAN_ASYMMETRY_TOL};
pub use funcs::{psd_inv_sqrt, psd_sqrt, PSD_TOL, SINGULARITY_THRESHOLD};
pub use matrix::{ComplexMatrix, Subsystem};
pub use svd::{svd, Svd};

pub(crate) use eig::leading_index;
pub(crate) use svd::complete_orthonormal;

/// Default Frobenius tolerance for matrix comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

pub use num_complex::Complex64;

/// Shorthand for a complex scalar.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
