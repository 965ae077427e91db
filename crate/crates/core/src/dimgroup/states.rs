use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::group::{GroupElement, OrderedGroup};
use crate::rational::Rational;

/// `p(g) = Σ c_i g_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupState {
    pub coefficients: Vec<Rational>,
}

impl GroupState {
    pub fn eval(&self, x: &GroupElement) -> Rational {
        self.coefficients
            .iter()
            .zip(x.coords())
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Index of the coordinate when the state is a scaled projection.
    pub fn projection_index(&self) -> Option<usize> {
        let mut nonzero = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero());
        let (i, _) = nonzero.next()?;
        nonzero.next().is_none().then_some(i)
    }
}

impl fmt::Display for GroupState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if *c == Rational::from_integer(1) {
                    format!("x{}", i + 1)
                } else {
                    format!("{c}·x{}", i + 1)
                }
            })
            .collect();
        write!(f, "p(x) = {}", terms.join(" + "))
    }
}

impl Serialize for GroupState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Extreme states: the coordinate projections the cone constrains, normalized at the unit.
///
/// The state space is `{c ≥ 0 supported on the constrained coordinates : c·u = 1}`,
/// a simplex whose vertices are these projections.
pub fn states(g: &OrderedGroup) -> Vec<GroupState> {
    g.functionals()
        .into_iter()
        .map(|i| {
            let mut coefficients = vec![Rational::zero(); g.rank()];
            coefficients[i] = Rational::from_integer(1) / g.unit().coords()[i];
            GroupState { coefficients }
        })
        .collect()
}

/// `Inf(G)`: the elements every state annihilates, i.e. those vanishing on the
/// constrained coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinitesimalSubgroup {
    pub denoms: Vec<u64>,
    /// Coordinates left free.
    pub free: Vec<usize>,
}

impl InfinitesimalSubgroup {
    pub fn is_trivial(&self) -> bool {
        self.free.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords()
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.free.contains(&i))
    }
}

impl fmt::Display for InfinitesimalSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free.is_empty() {
            return f.write_str("{0}");
        }
        const NAMES: [&str; 3] = ["a", "b", "c"];
        let coords: Vec<&str> = (0..self.denoms.len())
            .map(|i| {
                if self.free.contains(&i) {
                    NAMES[i]
                } else {
                    "0"
                }
            })
            .collect();
        let ranges: Vec<String> = self
            .free
            .iter()
            .map(|&i| match self.denoms[i] {
                1 => format!("{} ∈ Z", NAMES[i]),
                m => format!("{} ∈ Z[1/{m}]", NAMES[i]),
            })
            .collect();
        write!(f, "{{({}) : {}}}", coords.join(", "), ranges.join(", "))
    }
}

pub fn infinitesimals(g: &OrderedGroup) -> InfinitesimalSubgroup {
    let constrained = g.functionals();
    InfinitesimalSubgroup {
        denoms: g.denoms().to_vec(),
        free: (0..g.rank()).filter(|i| !constrained.contains(i)).collect(),
    }
}
