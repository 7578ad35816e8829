//! Stationary states of a two-level atom coupled to a quantized
//! monochromatic field in free space, with the field quantized on an
//! arbitrary rotated pair of modes (basis angle `alpha`).

pub mod adiabatic;
pub mod classical_field;
pub mod cli;
pub mod density;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod operators;
pub mod stationary;

pub use error::{Error, Result};
