//! Evolving one-dimensional binary cellular automata.
//!
//! Rule tables are searched with a genetic algorithm, binary PSO and the
//! binary global-local PSO variant, scored on the density-classification
//! task (`F100`) or on a compression-based chaos objective.

pub mod ca;
mod error;
pub mod harness;
pub mod objectives;
pub mod optimizers;
pub mod render;
pub mod seed;

pub use error::{Error, Result};
