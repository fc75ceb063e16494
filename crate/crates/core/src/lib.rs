//! Induced dynamical maps of open quantum systems.
//!
//! A system `A` starts out correlated with an environment `E` in a joint state
//! `ρ_AE`. Evolving both under a joint unitary `U` and tracing out `E` yields a
//! linear (possibly affine) map on system states. This crate builds such joint
//! states from separable ensembles, decomposes them into environment blocks,
//! evaluates a sufficient condition for the induced map to be positive for
//! every `U`, induces the map for a given `U`, tests complete positivity
//! through the Choi matrix and searches unitaries for positive maps that are
//! not completely positive.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod discord;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod random;
pub mod search;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{
    hadamard, hermitian_eigen, is_psd, partial_trace, tensor, ComplexMatrix, PsdVerdict, Spectrum, Subsystem, C64,
};

/// Default hermiticity tolerance (max-entry norm).
pub const HERMITIAN_TOL: f64 = 1e-9;
