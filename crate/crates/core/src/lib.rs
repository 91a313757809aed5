//! Dually symmetric electrodynamics, verified numerically.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: complex-number matrix representations, cyclic `[0,1]`
//!   bases and the Hamilton / Levi-Civita quaternion tables.
//! * [`dualsym`]: dual and hyperbolic dual transformations, invariants,
//!   boosts and the parity table of quaternion field components.
//! * [`gauge`]: the gauge group `U1(alpha) x R(beta)` and its irreducible
//!   representations.
//! * [`cavity`]: closed-form standing-wave solutions of the 1D perfectly
//!   conducting cavity, Maxwell residuals and the classical Hamiltonian.
//! * [`currents`]: cavity field functions, Lagrangian, Noether currents,
//!   complex charge, spin and Hilbert norms.
//! * [`qfield`]: truncated Fock-space quantization of the cavity field.
//! * [`quatmaxwell`]: quaternion packing of four-component fields and
//!   finite-difference residuals of the generalized Maxwell system.
//! * [`verify`]: the acceptance criteria as library checks, shared by the
//!   test suite and the `verify all` subcommand.
//!
//! Supporting modules: [`constants`], [`grid`], [`snapshot`], [`config`],
//! [`report`] and [`cli`].

pub mod algebra;
pub mod cavity;
pub mod cli;
pub mod config;
pub mod constants;
pub mod currents;
pub mod dualsym;
pub mod error;
pub mod gauge;
pub mod grid;
pub mod qfield;
pub mod quatmaxwell;
pub mod report;
pub mod snapshot;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
