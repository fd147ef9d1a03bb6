//! Dense complex linear algebra: matrix arithmetic, the exponential, and the
//! principal logarithm used as a verification oracle.

mod eig;
mod expm;
mod matrix;

pub use eig::{eigendecompose, logm_principal, schur, Eigendecomposition};
pub use expm::expm;
pub use matrix::{inverse, solve, ComplexMatrix, LinalgError};
