//! Complex linear algebra, quantum states and projective measurements.

mod eigen;
mod matrix;
pub mod real;
mod state;

pub use eigen::{eigh, hermitian_spectrum, max_residual, HermitianEigen, MAX_EIGEN_DIM};
pub use matrix::{inner, kron_vec, norm, normalized, ComplexMatrix};
pub use state::{
    born_probability, conditional_state, expectation, luders_update, sequential_joint,
    DensityMatrix, Projector,
};

pub use num_complex::Complex64;

/// Shorthand for a complex number.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
