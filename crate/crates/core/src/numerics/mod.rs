//! Dense complex linear algebra and deterministic randomness.

mod eigen;
mod fourier;
mod matrix;
mod rng;

pub use eigen::{hermitian_eigen, Spectrum, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use fourier::dft;
pub use matrix::{kron, partial_trace, ComplexMatrix, HERMITIAN_TOL};
pub use rng::Rng;

pub use num_complex::Complex64;
