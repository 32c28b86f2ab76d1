//! Link invariants from the ribbon spider category.
//!
//! The crate evaluates colored framed links in two independent ways: through
//! the skein theory of the quantized oriented Brauer category (generic `beta`),
//! and through explicit matrices on quantum super exterior powers at integer
//! `beta = m - n`.

pub mod cli;
pub mod dschur;
pub mod howe;
pub mod ratfn;
pub mod scalar;
pub mod skein;
pub mod spider;
pub mod tangle;

pub use scalar::{QExponent, Scalar, ScalarError};
