//! Adic odometers, their clopen sets and the unique invariant measure.

mod clopen;
pub(crate) mod measure;
mod system;

pub use clopen::ClopenSet;
pub use measure::{is_minimal_power, InvariantMeasure};
pub use system::{OdometerSystem, MAX_CYLINDERS};
