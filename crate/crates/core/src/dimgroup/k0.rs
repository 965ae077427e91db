use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::odometer::OdometerSystem;
use crate::rational::{divides_power_of, Rational};

use super::group::{Cone, GroupElement, OrderedGroup};

/// `(Z[1/m], ≥ 0, 1)` with `m` the product of one period of bases.
///
/// Clopen sets of depth `n` have measures exactly `k / D(n)`, and `D(n)` runs
/// through denominators whose prime support is that of `m`.
pub fn k0_of_odometer(system: &OdometerSystem) -> OrderedGroup {
    OrderedGroup::new(
        vec![system.period_product()],
        Cone::Coordinatewise,
        GroupElement::from_ints(&[1]),
    )
    .expect("rank one with unit 1")
}

/// Group elements `k / denominator` in `[0, u]` for a rank-one group with unit `u`.
pub fn unit_interval_values(g: &OrderedGroup, denominator: u64) -> Result<BTreeSet<Rational>> {
    if g.rank() != 1 {
        return Err(Error::Unsupported(format!(
            "unit interval values need rank 1, got rank {}",
            g.rank()
        )));
    }
    if denominator == 0 {
        return Err(Error::Precondition("denominator must be positive".into()));
    }
    let m = g.denoms()[0];
    let u = g.unit().coords()[0];
    let d = denominator as i128;
    let top = (u * Rational::from_integer(d)).floor().to_integer();
    Ok((0..=top)
        .map(|k| Rational::new(k, d))
        .filter(|v| divides_power_of(*v.denom(), m))
        .collect())
}
