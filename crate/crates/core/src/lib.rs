//! Spinor and vector pictures of the Dirac equation.
//!
//! In the spinor picture the wave function `ψ` transforms with the spinor
//! representation `S(Λ)` while the gamma matrices stay fixed. In the vector
//! picture the wave function `Ψ = S⁻¹ψ` is a Lorentz scalar and the gamma
//! matrices `Γᵘ = S⁻¹γᵘS` transform as a four-vector. This crate implements
//! both, converts between them, and checks the identities relating them on
//! exact plane-wave solutions.

#![allow(clippy::needless_range_loop)]

pub mod clifford;
pub mod error;
pub mod fieldspec;
pub mod harness;
pub mod linalg;
pub mod lorentz;
pub mod pictures;
pub mod planewave;
pub mod rng;
pub mod spinor_rep;
pub mod sweep;

pub use error::{Error, Result};
