//! Steady-state optics of a laser-driven four-level atom with interacting
//! dark resonances and an incoherent pump on the probe transition.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod model;
pub mod numeric;
pub mod observables;
pub mod steady_state;
pub mod sweep;

pub use error::{Error, Result};
