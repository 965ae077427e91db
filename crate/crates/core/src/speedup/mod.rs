//! Speedup maps `S(x) = T^{p(x)}(x)` and the constructions that produce them.

mod conjugacy;
mod induction;
mod injection;
mod map;
mod power;
mod selection;
mod verify;

pub use conjugacy::{conjugacy_stage, ConjugacyStage, PhiEntry, PrefixBijection};
pub use induction::{
    construct_bijection, construct_bijection_with, induction_step, Bijection, InductionStep,
    Residual, StageLedger, StageRecord,
};
pub use injection::{construct_injection, ColumnAssignment, Injection, PieceOrigin};
pub use map::{Piece, SpeedupMap};
pub use power::power_speedup;
pub use selection::{subset_condition, transfer_partition};
pub use verify::{verify_speedup, ImageExpectation};
