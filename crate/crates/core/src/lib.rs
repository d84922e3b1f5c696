//! Hadamard matrices, bases unbiased to the standard basis, beam-splitter
//! bit sources, and a debias-then-test pipeline for the resulting streams.
//!
//! The crate is organized around a few exact primitives:
//!
//! - [`mat::SignMatrix`] — bit-packed `{-1,+1}` matrices with integer Gram
//!   computation, the home of Hadamard matrices.
//! - [`mat::PhaseMatrix`] — unit-modulus matrices stored as exact rational
//!   phases, the home of complex Hadamard matrices and basis systems.
//! - [`construct`] — Sylvester and Paley constructions, order admissibility,
//!   verification and the normalized canonical form.
//! - [`search`] — exhaustive backtracking for existence and exact counting of
//!   normalized Hadamard matrices at small orders.
//! - [`schwinger`] — the cyclic-shift eigenbasis as an exact Fourier phase
//!   matrix, unbiasedness checks, row equivalence, and the exhaustive
//!   sign/quarter-turn substitution explorer.
//! - [`sim`] — beam splitters as verified unitaries, interferometer
//!   round-trip checks, and seeded gap-model samplers.
//! - [`extract`] — von Neumann debiasing and finite-string normality tests.
//!
//! Floating-point verifications use two crate-wide tolerances, [`TOL`] and
//! [`TOL_TIGHT`]; they are compile-time constants so a verdict never depends
//! on runtime configuration.

pub mod construct;
pub mod error;
pub mod extract;
pub mod mat;
pub mod phase;
pub mod report;
pub mod rng;
pub mod schwinger;
pub mod search;
pub mod sim;
pub mod stream;

pub use error::{Error, Result};
pub use mat::{PhaseMatrix, SignMatrix, StateVector, UnitaryDense};
pub use phase::{phase_mul, Phase};
pub use report::TestReport;
pub use stream::BitStream;

/// Default verification tolerance: unitarity, orthogonality, overlap and
/// round-trip checks.
pub const TOL: f64 = 1e-9;

/// Tight tolerance for checks that are exact up to rounding, such as entry
/// moduli of normalized phase matrices.
pub const TOL_TIGHT: f64 = 1e-12;
