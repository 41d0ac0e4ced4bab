//! Phase-difference operators for bosons and fermions in a symmetric double
//! well, with exact and RK4 time propagation and the observables built on
//! them.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: bases and normalized states.
//! * [`ops`]: Carruthers–Nieto and unitary phase-difference operators,
//!   number differences, fermionic ladder operators and algebra checks.
//! * [`hamiltonian`]: boson dimer and fermion pair Hamiltonians.
//! * [`evolve`]: eigendecomposition and RK4 propagators, closed-form pair
//!   solutions.
//! * [`observe`]: expectations, fluctuations, squeezing parameters.
//! * [`runner`]: scenario configs, CSV output, figure presets and the
//!   `verify` suite behind the `phasekit` binary.

pub mod error;
pub mod evolve;
pub mod fock;
pub mod hamiltonian;
pub mod observe;
pub mod ops;
pub mod runner;

pub use error::{Error, Result};

/// Complex double.
pub type C64 = nalgebra::Complex<f64>;
