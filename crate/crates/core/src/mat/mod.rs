//! Exact and floating-point matrix/vector primitives.
//!
//! [`SignMatrix`] keeps `{-1,+1}` entries bit-packed so Gram computations run
//! on XOR/popcount; [`PhaseMatrix`] keeps unit-modulus entries as exact
//! rational phases over a common denominator; [`StateVector`] and
//! [`UnitaryDense`] are the floating-point side used for norms, products and
//! unitarity checks.

mod complex;
mod phase_mat;
mod sign;

pub use complex::{StateVector, UnitaryDense};
pub use phase_mat::PhaseMatrix;
pub use sign::SignMatrix;
