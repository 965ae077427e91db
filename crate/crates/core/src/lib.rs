//! Exact constructions on adic odometers: clopen algebra, Kakutani-Rokhlin
//! towers, speedup maps built from first-return data, and decision procedures
//! for unital ordered groups of the form `Z[1/m_1] ⊕ … ⊕ Z[1/m_d]`.
//!
//! Everything is computed with exact rationals. A clopen set is a finite union
//! of cylinders of one depth, and `T` acts on depth-`n` cylinders as a single
//! cycle of length `b_1 ⋯ b_n`, so every construction can be checked
//! exhaustively at its representation depth.

pub mod dimgroup;
pub mod error;
pub mod odometer;
pub mod rational;
pub mod report;
pub mod speedup;
pub mod towers;

pub use error::{Error, Result};
pub use odometer::{is_minimal_power, ClopenSet, InvariantMeasure, OdometerSystem};
pub use rational::Rational;
pub use report::{CheckEntry, Report};
pub use towers::{Column, KRPartition, ReturnTimeProfile};
