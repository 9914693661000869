//! Capacity-region bounds for the two-user interference channel with a
//! cognitive relay.
//!
//! Gaussian channels get closed-form outer regions, regime classification
//! and a log-determinant cross-check; discrete channels get exact
//! information measures and per-distribution bound evaluators.

pub mod cli;
pub mod discrete;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod io;
pub mod model;

pub use error::{Error, Result};
