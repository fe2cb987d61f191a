//! Discretizes minisuperspace Wheeler-DeWitt Hamiltonians on qubit grids,
//! decomposes them into Pauli sums, and solves for eigenvalues both exactly
//! and variationally on a statevector simulator.
//!
//! The pipeline: [`grid`] builds position and momentum operators on a
//! power-of-two grid, [`models`] assembles the cosmological Hamiltonians,
//! [`pauli`] decomposes the resulting matrices into tensor-product Pauli
//! strings, and [`vqe`] minimizes the expectation value of that sum over a
//! hardware-efficient Ry ansatz driven by [`spsa`]. The [`eigensolver`]
//! provides the exact dense reference spectrum for every run.

pub mod ansatz;
pub mod eigensolver;
pub mod error;
pub mod grid;
pub mod matrix;
pub mod models;
pub mod pauli;
pub mod simulator;
pub mod spsa;
pub mod vqe;

pub use error::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
