//! Dense complex matrices and the matrix functions the lift relies on.

mod expm;
mod logm;
mod matrix;
mod permanent;

pub use expm::{matrix_exponential, matrix_exponential_pade};
pub use logm::{principal_phase, unitary_logarithm};
pub use matrix::{
    hermiticity_residual, is_hermitian, is_unitary, unitarity_residual, ComplexMatrix,
};
pub use num_complex::Complex64;
pub use permanent::{permanent, MAX_PERMANENT_SIZE};
