//! Gravity-induced multiqubit entanglement.
//!
//! Masses on a line are each split into a left/right superposition. Every
//! branch (bit-string of left = `0`, right = `1` assignments) picks up a
//! phase from the Newtonian potential between its components, and the
//! resulting N-qubit state carries entanglement through the relative phases.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized as:
//!
//! * [`qstate`]: dense statevectors, density matrices, partial transpose,
//!   Hermitian eigenvalues, Pauli expectations, lattice symmetries.
//! * [`gravity`]: geometry, potential, branch phases and final states.
//! * [`classify`]: three-qubit SLOCC classification and bipartite witnesses.
//! * [`ghzlib`]: the recursive GHZ-type families with rank-2 certificates.
//! * [`measures`]: geometric measure, tripartite negativity and sweeps.
//!
//! Qubit `0` is the leftmost mass and the most significant bit of a basis
//! index, so index `0b001` of a three-qubit state is `|001⟩`.
#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod ghzlib;
pub mod gravity;
mod linalg;
pub mod measures;
pub mod qstate;
#[cfg(test)]
mod testutil;

pub use num_complex::Complex64;

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },
    #[error("need at least {min} qubits, got {found}")]
    TooFewQubits { min: usize, found: usize },
    #[error("expected a {expected}-qubit state, got {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },
    #[error("invalid setup: {0}")]
    InvalidSetup(&'static str),
    #[error("sites {0} and {1} coincide")]
    SameSite(usize, usize),
    #[error("distance must be positive, got {0}")]
    NonPositiveDistance(f64),
    #[error("branch {member:#b} has a phase different from its class representative {representative:#b}")]
    PhaseClassMismatch { representative: usize, member: usize },
    #[error("no phase given for basis index {0:#b}")]
    MissingBitString(usize),
    #[error("rank-2 certificate failed validation: {0}")]
    CertificateInvalid(&'static str),
    #[error("invalid Pauli letter {0:?}")]
    InvalidPauli(char),
    #[error("invalid bit-string {0:?}")]
    InvalidBitString(alloc::string::String),
    #[error("expected at least {min} points, got {found}")]
    TooFewPoints { min: usize, found: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
