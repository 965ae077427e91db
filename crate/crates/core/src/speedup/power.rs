use crate::error::{Error, Result};
use crate::odometer::{measure::first_non_minimal_depth, ClopenSet, InvariantMeasure};

use super::map::{Piece, SpeedupMap};

/// `S = T^k` on the whole space, provided `T^k` is minimal up to `depth_budget`.
pub fn power_speedup(m: &InvariantMeasure, k: u64, depth_budget: u32) -> Result<SpeedupMap> {
    let system = m.system();
    if let Some((depth, orbit, expected)) = first_non_minimal_depth(system, k, depth_budget)? {
        return Err(Error::NotMinimal {
            k,
            depth,
            orbit,
            expected,
        });
    }
    SpeedupMap::new(
        system,
        vec![Piece {
            domain: ClopenSet::whole(system),
            jump: k,
        }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odometer::OdometerSystem;

    #[test]
    fn powers_coprime_to_the_bases() {
        let m = InvariantMeasure::new(&OdometerSystem::dyadic());
        assert_eq!(
            power_speedup(&m, 3, 8).unwrap().to_string(),
            "whole -> jump 3\n"
        );
        let err = power_speedup(&m, 2, 8).unwrap_err();
        assert!(matches!(err, Error::NotMinimal { depth: 1, .. }));
        let t = InvariantMeasure::new(&OdometerSystem::triadic());
        assert_eq!(power_speedup(&t, 2, 8).unwrap().pieces()[0].jump, 2);
    }
}
