use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::clopen::ClopenSet;
use super::system::OdometerSystem;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The product measure of an odometer, its unique invariant probability measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMeasure {
    system: OdometerSystem,
}

impl InvariantMeasure {
    pub fn new(system: &OdometerSystem) -> Self {
        Self {
            system: system.clone(),
        }
    }

    pub fn system(&self) -> &OdometerSystem {
        &self.system
    }

    pub fn measure(&self, set: &ClopenSet) -> Result<Rational> {
        self.check(set)?;
        Ok(set.measure())
    }

    pub(crate) fn check(&self, set: &ClopenSet) -> Result<()> {
        if set.system() == &self.system {
            Ok(())
        } else {
            Err(Error::MismatchedSystems)
        }
    }

    /// Mass of a single depth-`depth` cylinder.
    pub fn cylinder_mass(&self, depth: u32) -> Result<Rational> {
        Ok(Rational::new(1, self.system.denominator(depth)? as i128))
    }

    /// Every value `μ(E)` attains on clopen sets of depth at most `max_depth`.
    pub fn clopen_value_set(&self, max_depth: u32) -> Result<BTreeSet<Rational>> {
        let mut values = BTreeSet::new();
        for n in 0..=max_depth {
            let d = self.system.denominator(n)? as i128;
            values.extend((0..=d).map(|k| Rational::new(k, d)));
        }
        Ok(values)
    }

    /// An all-zero cylinder of the smallest depth whose mass is below `epsilon`.
    pub fn small_clopen(&self, epsilon: Rational) -> Result<ClopenSet> {
        if epsilon <= Rational::zero() || epsilon > Rational::one() {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        let mut depth = 0;
        while self.cylinder_mass(depth)? >= epsilon {
            depth += 1;
        }
        ClopenSet::cylinder(&self.system, &vec![0; depth as usize])
    }
}

/// Whether `T^k` cycles through all depth-`n` cylinders for every `n ≤ depth`.
///
/// The orbit of one cylinder is walked explicitly; all orbits of `T^k` on a
/// depth-`n` cycle have the same length, so one walk per depth decides it.
pub fn is_minimal_power(system: &OdometerSystem, k: u64, depth: u32) -> Result<bool> {
    Ok(first_non_minimal_depth(system, k, depth)?.is_none())
}

/// The first depth at which `T^k` splits into several cycles, with the orbit length found there.
pub(crate) fn first_non_minimal_depth(
    system: &OdometerSystem,
    k: u64,
    depth: u32,
) -> Result<Option<(u32, u64, u64)>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    for n in 1..=depth {
        let d = system.denominator(n)?;
        if d > super::clopen::MAX_ENUMERATED_CELLS {
            return Err(Error::Budget(format!(
                "orbit walk at depth {n} has {d} cylinders"
            )));
        }
        let step = k % d;
        let mut cur = step;
        let mut len = 1u64;
        while cur != 0 {
            cur = (cur + step) % d;
            len += 1;
        }
        if len != d {
            return Ok(Some((n, len, d)));
        }
    }
    Ok(None)
}
