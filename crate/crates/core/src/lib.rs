//! SU(2) Perelomov number coherent states and the algebraic solution of two
//! coupled harmonic oscillators.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: dense complex matrices, special functions, matrix
//!   exponential, Hermitian eigensolver and radial quadrature.
//! * [`su2`]: half-integer labels and the Dicke-basis generators.
//! * [`coherent`]: displacement operators, number coherent states and the
//!   similarity-transformed generators.
//! * [`coupled`]: the coupled-oscillator Hamiltonian in su(2) block form,
//!   its diagonalising tilt, spectrum, partition function and phases.
//! * [`fock`]: brute-force two-mode Fock-space ground truth.
//! * [`wavefn`]: polar wavefunctions of the 2D oscillator and of the number
//!   coherent states.
//! * [`reference`] and [`verify`]: independent evaluators and the named
//!   verification checks run by the `pncs verify` command.
//!
//! Units are ħ = k = 1 throughout. Every basis is ordered with μ ascending.

pub mod coherent;
pub mod coupled;
pub mod error;
mod exact;
pub mod fock;
pub mod numerics;
pub mod reference;
pub mod su2;
pub mod verify;
pub mod wavefn;

pub use error::{Error, Result};
pub use numerics::OperatorMatrix;
pub use su2::HalfInt;
