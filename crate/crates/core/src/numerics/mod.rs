//! Self-contained numerical kernels shared by every other module.

mod eigen;
mod expm;
mod matrix;
mod quadrature;
mod special;

pub use eigen::{hermitian_eigensystem, EigenSystem};
pub use expm::matrix_exp;
pub use matrix::OperatorMatrix;
pub use quadrature::{gauss_legendre, radial_quadrature, DEFAULT_RHO_MAX, DEFAULT_RADIAL_POINTS};
pub use special::{assoc_laguerre, ln_factorial, log_gamma};
