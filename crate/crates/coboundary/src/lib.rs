//! Exact-arithmetic rearrangement machinery and constructive solvers for the
//! additive coboundary equation f = g∘T − g.
//!
//! The crate works entirely over arbitrary-precision rationals: step
//! functions on [0,1), interval exchange transformations, finite measure
//! spaces, Steinitz-style rearrangement with certified prefix-sum bounds,
//! matrix column-permutation constructions, a finite-depth Cantor-set
//! cascade, and brute-force oracles that independently confirm every
//! certified bound. See the `examples/` directory for one runnable program
//! per capability, and the `coboundary` binary for the file-based CLI.

pub mod cantor;
pub mod cli;
pub mod counterexample;
pub mod diophantine;
pub mod discrete;
pub mod error;
pub mod exchange;
pub mod format;
pub mod instances;
pub mod linalg;
pub mod norm;
pub mod rational;
pub mod selection;
pub mod solve;
pub mod steinitz;
pub mod step;
pub mod vector;

pub use error::{Error, Result};
pub use norm::{Norm, NormValue};
pub use rational::Rational;
pub use vector::RationalVector;
