use serde::Serialize;

use super::axioms::check_axioms;
use super::group::OrderedGroup;
use super::hom::{gate, gate_both_ways, BothWays, GateOutcome, Isomorphism, Obstruction};
use super::states::{infinitesimals, states, GroupState, InfinitesimalSubgroup};
use crate::report::Report;

/// `Z[1/2]²` with the strict cone and unit `(1, 1)` against the dyadic group `Z[1/2]`.
#[derive(Debug, Clone, Serialize)]
pub struct StrictPlaneExample {
    pub group: OrderedGroup,
    pub target: OrderedGroup,
    pub axioms: Report,
    pub states: Vec<GroupState>,
    pub infinitesimals: InfinitesimalSubgroup,
    pub forward: GateOutcome,
    pub both: BothWays,
    pub speedup: bool,
    pub orbit_equivalent: bool,
}

impl StrictPlaneExample {
    pub fn conclusion(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        format!(
            "speedup: {}; orbit equivalence: {}",
            yn(self.speedup),
            yn(self.orbit_equivalent)
        )
    }

    /// Whether every step came out as expected for this pair.
    pub fn passed(&self) -> bool {
        self.axioms.all_passed()
            && self.states.len() == 2
            && self.infinitesimals.is_trivial()
            && self
                .forward
                .witness()
                .is_some_and(|h| h.projection_index() == Some(0))
            && matches!(
                self.both.reverse,
                GateOutcome::None(Obstruction::StateCount { .. })
            )
            && self.speedup
            && !self.orbit_equivalent
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.extend("axioms.", self.axioms.clone());
        r.push(
            "two_extreme_states",
            self.states.len() == 2,
            self.states
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        );
        r.push(
            "no_infinitesimals",
            self.infinitesimals.is_trivial(),
            self.infinitesimals.to_string(),
        );
        r.push(
            "gate_onto_dyadics",
            self.forward
                .witness()
                .is_some_and(|h| h.projection_index() == Some(0)),
            self.forward.to_string(),
        );
        r.push(
            "reverse_gate_fails",
            matches!(
                self.both.reverse,
                GateOutcome::None(Obstruction::StateCount { .. })
            ),
            self.both.reverse.to_string(),
        );
        r.push(
            "not_isomorphic",
            !self.orbit_equivalent,
            self.both.isomorphism.to_string(),
        );
        r
    }
}

/// Axioms, states, infinitesimals and both gates for the strict plane over the dyadics.
pub fn strict_plane_example() -> StrictPlaneExample {
    let group =
        OrderedGroup::parse("rank=2 denoms=2,2 cone=strict unit=1,1").expect("well-formed group");
    let target = OrderedGroup::rank_one(2);
    let forward = gate(&group, &target);
    let both = gate_both_ways(&group, &target);
    StrictPlaneExample {
        axioms: check_axioms(&group, 500, 6),
        states: states(&group),
        infinitesimals: infinitesimals(&group),
        speedup: forward.witness().is_some(),
        orbit_equivalent: matches!(both.isomorphism, Isomorphism::Witness(_)),
        forward,
        both,
        group,
        target,
    }
}
