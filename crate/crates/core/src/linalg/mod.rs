//! Dense complex linear algebra: tensor products, partial traces, Hermitian
//! eigen-decomposition and positivity tests.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, is_psd, min_eigenvalue, PsdVerdict, Spectrum};
pub use matrix::{hadamard, partial_trace, tensor, tensor_with_limit, ComplexMatrix, Subsystem, MAX_TENSOR_ROWS};

pub(crate) use matrix::check_bipartite;

pub type C64 = num_complex::Complex64;
