//! Unital ordered groups `Z[1/m_1] ⊕ … ⊕ Z[1/m_d]` (rank at most 3) with one
//! of three positive cones, and the decision procedures built on them.

mod axioms;
mod example;
mod group;
mod hom;
mod k0;
mod states;

pub use axioms::{check_axioms, riesz_interpolant};
pub use example::{strict_plane_example, StrictPlaneExample};
pub use group::{Cone, GroupElement, OrderedGroup};
pub use hom::{
    first_isomorphism_check, gate, gate_both_ways, gate_conditions, gate_with, BothWays,
    GateOutcome, GroupHom, Isomorphism, Obstruction, SearchBounds,
};
pub use k0::{k0_of_odometer, unit_interval_values};
pub use states::{infinitesimals, states, GroupState, InfinitesimalSubgroup};
