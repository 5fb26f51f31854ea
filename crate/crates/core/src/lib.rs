//! Finite-volume laboratory for magnetic lattice operators with an Iwatsuka interface.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: slopes with exact sign decisions, phases, the field and its gauge, lattice windows.
//! - [`hull`]: the two-valued subshift generated by the field, at finite resolution.
//! - [`operators`]: magnetic translations, Hamiltonians, spectral calculus.
//! - [`invariants`]: traces, derivations, Chern and winding numbers, the bulk-interface check.

mod error;
pub mod hull;
pub mod invariants;
pub mod model;
pub mod operators;

pub use error::{Error, Result};
