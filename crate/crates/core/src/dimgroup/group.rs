use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{divides_power_of, parse_rational, Rational};

/// Which elements count as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cone {
    /// Every coordinate `≥ 0`.
    Coordinatewise,
    /// Zero, or every coordinate `> 0`.
    Strict,
    /// Zero, or first coordinate `> 0` (other coordinates unrestricted).
    FirstCoordinateStrict,
}

impl Cone {
    /// Open cones are `{0}` together with an open set.
    pub fn is_open(self) -> bool {
        !matches!(self, Cone::Coordinatewise)
    }

    /// Coordinates the cone constrains.
    pub fn functionals(self, rank: usize) -> Vec<usize> {
        match self {
            Cone::FirstCoordinateStrict => vec![0],
            _ => (0..rank).collect(),
        }
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cone::Coordinatewise => "coordinatewise",
            Cone::Strict => "strict",
            Cone::FirstCoordinateStrict => "first-coordinate-strict",
        })
    }
}

impl FromStr for Cone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coordinatewise" => Ok(Cone::Coordinatewise),
            "strict" => Ok(Cone::Strict),
            "first-coordinate-strict" | "first-strict" => Ok(Cone::FirstCoordinateStrict),
            _ => Err(Error::Parse(format!("unknown cone {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<Rational>);

impl GroupElement {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rational::zero(); rank])
    }

    pub fn from_ints(values: &[i128]) -> Self {
        Self(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = Self::zero(rank);
        e.0[i] = Rational::from_integer(1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: Rational) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|r| r.to_string()))
    }
}

/// `Z[1/m_1] ⊕ … ⊕ Z[1/m_d]` with a positive cone and an order unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrderedGroup {
    denoms: Vec<u64>,
    cone: Cone,
    unit: GroupElement,
}

impl OrderedGroup {
    pub fn new(denoms: Vec<u64>, cone: Cone, unit: GroupElement) -> Result<Self> {
        if denoms.is_empty() || denoms.len() > 3 {
            return Err(Error::Unsupported(format!(
                "rank {} (supported ranks are 1 to 3)",
                denoms.len()
            )));
        }
        if denoms.contains(&0) {
            return Err(Error::Parse("denominator bases must be at least 1".into()));
        }
        if unit.0.len() != denoms.len() {
            return Err(Error::Parse(format!(
                "unit has {} coordinates for rank {}",
                unit.0.len(),
                denoms.len()
            )));
        }
        let g = Self { denoms, cone, unit };
        if !g.contains(&g.unit) {
            return Err(Error::Parse(format!("unit {} is not in the group", g.unit)));
        }
        if !g.is_order_unit(&g.unit) {
            return Err(Error::Precondition(format!(
                "unit {} is not an order unit for the {} cone",
                g.unit, g.cone
            )));
        }
        Ok(g)
    }

    /// `Z[1/m]` with the usual order and unit 1.
    pub fn rank_one(m: u64) -> Self {
        Self::new(vec![m], Cone::Coordinatewise, GroupElement::from_ints(&[1]))
            .expect("valid group")
    }

    /// Parses `rank=2 denoms=2,2 cone=strict unit=1,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut rank, mut denoms, mut cone, mut unit) = (None, None, None, None);
        for token in text.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
            match key {
                "rank" => {
                    rank = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad rank {value:?}")))?,
                    )
                }
                "denoms" => {
                    denoms = Some(
                        value
                            .split(',')
                            .map(|v| {
                                v.parse::<u64>()
                                    .map_err(|_| Error::Parse(format!("bad denominator {v:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "cone" => cone = Some(value.parse::<Cone>()?),
                "unit" => {
                    unit = Some(GroupElement(
                        value
                            .split(',')
                            .map(parse_rational)
                            .collect::<Result<Vec<_>>>()?,
                    ))
                }
                _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
            }
        }
        let denoms = denoms.ok_or_else(|| Error::Parse("missing denoms=".into()))?;
        if let Some(r) = rank {
            if r != denoms.len() {
                return Err(Error::Parse(format!(
                    "rank={r} but {} denominators given",
                    denoms.len()
                )));
            }
        }
        let cone = cone.unwrap_or(Cone::Coordinatewise);
        let unit = match unit {
            Some(u) => u,
            None => GroupElement::from_ints(&vec![1; denoms.len()]),
        };
        Self::new(denoms, cone, unit)
    }

    pub fn rank(&self) -> usize {
        self.denoms.len()
    }

    pub fn denoms(&self) -> &[u64] {
        &self.denoms
    }

    pub fn cone(&self) -> Cone {
        self.cone
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn functionals(&self) -> Vec<usize> {
        self.cone.functionals(self.rank())
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.rank()
            && x.0
                .iter()
                .zip(&self.denoms)
                .all(|(c, &m)| divides_power_of(*c.denom(), m))
    }

    pub fn is_positive(&self, x: &GroupElement) -> bool {
        if x.is_zero() {
            return true;
        }
        let f = self.functionals();
        if self.cone.is_open() {
            f.iter().all(|&i| x.0[i].is_positive())
        } else {
            f.iter().all(|&i| !x.0[i].is_negative())
        }
    }

    /// Least `n ≥ 0` with `x ≤ n·v`, if there is one.
    pub fn order_unit_multiple(&self, v: &GroupElement, x: &GroupElement) -> Option<u64> {
        let mut n: i128 = 0;
        for i in self.functionals() {
            let (vi, xi) = (v.0[i], x.0[i]);
            if vi.is_positive() {
                let q = xi / vi;
                let need = if self.cone.is_open() {
                    q.floor().to_integer() + 1
                } else {
                    q.ceil().to_integer()
                };
                n = n.max(need);
            } else if self.cone.is_open() || xi.is_positive() {
                return None;
            }
        }
        let n = u64::try_from(n.max(0)).ok()?;
        if !self.is_positive(&v.scale(Rational::from_integer(n as i128)).sub(x)) {
            return None;
        }
        // n·v − x = 0 is positive too, which the strict bound above skips.
        let exact =
            v.0.iter()
                .zip(&x.0)
                .find(|(vi, _)| !vi.is_zero())
                .map(|(vi, xi)| xi / vi)
                .filter(|k| k.is_integer() && !k.is_negative() && v.scale(*k) == *x)
                .map(|k| k.to_integer() as u64);
        Some(exact.map_or(n, |k| k.min(n)))
    }

    pub fn is_order_unit(&self, v: &GroupElement) -> bool {
        if v.is_zero() || !self.is_positive(v) {
            return false;
        }
        (0..self.rank()).all(|i| {
            let e = GroupElement::basis(self.rank(), i);
            self.order_unit_multiple(v, &e).is_some()
                && self.order_unit_multiple(v, &e.neg()).is_some()
        })
    }
}

impl fmt::Display for OrderedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let denoms: Vec<String> = self.denoms.iter().map(|d| d.to_string()).collect();
        let unit: Vec<String> = self.unit.0.iter().map(|r| r.to_string()).collect();
        write!(
            f,
            "rank={} denoms={} cone={} unit={}",
            self.rank(),
            denoms.join(","),
            self.cone,
            unit.join(",")
        )
    }
}
