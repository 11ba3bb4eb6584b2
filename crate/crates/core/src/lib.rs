//! Numerical geometry of the qubit state space.
//!
//! The crate evaluates monotone Riemannian metrics through Morozova–Čencov
//! functions, generates entanglement between a qubit and an ancilla with a
//! basis-adapted controlled-NOT, and measures the result with negativity. The
//! [`verify`] layer puts both quantities side by side and measures how the
//! negativity scales with the square root of the Wigner–Yanase metric.
//!
//! Module map:
//!
//! - [`matrix`]: dense complex matrices, Kronecker products, partial transpose,
//!   and a Jacobi eigensolver for Hermitian input.
//! - [`states`]: Bloch vectors, density matrices, mixedness.
//! - [`geometry`]: tangent vectors, Morozova–Čencov functions, metric evaluation.
//! - [`entanglement`]: entangling unitaries, joint states, negativity.
//! - [`channels`]: qubit CPTP maps in Kraus form.
//! - [`verify`]: sweeps, coefficient fits and monotonicity scans.
//! - [`cli`]: the `qgeo` command-line front end.

#![forbid(unsafe_code)]

pub mod channels;
pub mod cli;
pub mod entanglement;
mod error;
pub mod geometry;
pub mod matrix;
pub mod sampling;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, EigenDecomposition};
pub use num_complex::Complex64;
