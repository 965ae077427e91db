use serde::Serialize;

use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, InvariantMeasure};
use crate::towers::{refine_tower, return_times, tower_over_base, KRPartition};

use super::map::SpeedupMap;

/// The choice `Γ : J ↪ K` made in one column of the refined tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnAssignment {
    pub column: usize,
    /// Levels of the column lying in `A`, bottom to top.
    pub a_levels: Vec<u64>,
    /// Levels of the column lying in `B`, bottom to top.
    pub b_levels: Vec<u64>,
    /// `(j, Γ(j))` pairs.
    pub gamma: Vec<(u64, u64)>,
}

/// How a piece of the injection was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceOrigin {
    pub column: usize,
    pub source_level: u64,
    pub target_level: u64,
    /// First return time to the column base; set only for wrap-around pieces.
    pub return_time: Option<u64>,
    pub column_height: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Injection {
    pub map: SpeedupMap,
    pub tower: KRPartition,
    pub assignments: Vec<ColumnAssignment>,
    /// Parallel to `map.pieces()`.
    pub origins: Vec<PieceOrigin>,
    /// Depth of the all-zero cylinder the tower was built over.
    pub tower_depth: u32,
}

/// Embeds `a` into `b` by a speedup map, for disjoint clopens with `μ(a) < μ(b)`.
///
/// A tower over `[0^d]` is refined against `{a, b, (a ∪ b)ᶜ}` for the first
/// `d` at which every column has more `B`-levels than `A`-levels. Each
/// `A`-level is sent to the lowest free `B`-level above it, or, failing that,
/// to the lowest free one below by going around through the column base.
pub fn construct_injection(
    m: &InvariantMeasure,
    a: &ClopenSet,
    b: &ClopenSet,
) -> Result<Injection> {
    m.check(a)?;
    m.check(b)?;
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("B"));
    }
    if !a.is_disjoint(b)? {
        return Err(Error::NotDisjoint);
    }
    let (ma, mb) = (a.measure(), b.measure());
    if ma >= mb {
        return Err(Error::MeasureNotLess { a: ma, b: mb });
    }
    let system = m.system();
    let rest = a.union(b)?.complement();
    let q = [a.clone(), b.clone(), rest];
    let n0 = a.depth().max(b.depth()).max(1);

    for d in 1..=n0 {
        let tower = tower_over_base(m, &ClopenSet::cylinder(system, &vec![0; d as usize])?)?;
        let refined = refine_tower(&tower, &q)?;
        let depth = n0.max(d);
        let dn = system.denominator(depth)?;
        let mut assignments = Vec::new();
        let mut enough = true;
        for (i, col) in refined.columns().iter().enumerate() {
            let c0 = col.base.indices()[0];
            let (mut a_levels, mut b_levels) = (Vec::new(), Vec::new());
            for j in 0..col.height {
                let cell = (c0 + j) % dn;
                if a.contains_cell(depth, cell) {
                    a_levels.push(j);
                } else if b.contains_cell(depth, cell) {
                    b_levels.push(j);
                }
            }
            if b_levels.len() <= a_levels.len() {
                enough = false;
                break;
            }
            assignments.push(ColumnAssignment {
                column: i,
                gamma: greedy_gamma(&a_levels, &b_levels),
                a_levels,
                b_levels,
            });
        }
        if enough {
            return emit(m, refined, assignments, d);
        }
    }
    unreachable!(
        "the tower of depth max(depth A, depth B) is a single column listing every cylinder"
    )
}

/// Bottom-up: lowest unused `B`-level above, else lowest unused one below.
fn greedy_gamma(a_levels: &[u64], b_levels: &[u64]) -> Vec<(u64, u64)> {
    let mut used = vec![false; b_levels.len()];
    a_levels
        .iter()
        .map(|&j| {
            let pick = (0..b_levels.len())
                .find(|&i| !used[i] && b_levels[i] > j)
                .or_else(|| (0..b_levels.len()).find(|&i| !used[i]))
                .expect("more B-levels than A-levels");
            used[pick] = true;
            (j, b_levels[pick])
        })
        .collect()
}

fn emit(
    m: &InvariantMeasure,
    tower: KRPartition,
    assignments: Vec<ColumnAssignment>,
    tower_depth: u32,
) -> Result<Injection> {
    let mut map = SpeedupMap::empty(m.system());
    let mut origins = Vec::new();
    for asg in &assignments {
        let col = &tower.columns()[asg.column];
        for &(j, k) in &asg.gamma {
            let level = col.level(j);
            if k > j {
                map.push(level, k - j);
                origins.push(PieceOrigin {
                    column: asg.column,
                    source_level: j,
                    target_level: k,
                    return_time: None,
                    column_height: col.height,
                });
                continue;
            }
            for (piece, lambda) in return_times(m, &col.base)?.pieces {
                if lambda < col.height {
                    return Err(Error::Precondition(format!(
                        "return time {lambda} below column height {}",
                        col.height
                    )));
                }
                map.push(piece.apply_t(j as i64), lambda - (j - k));
                origins.push(PieceOrigin {
                    column: asg.column,
                    source_level: j,
                    target_level: k,
                    return_time: Some(lambda),
                    column_height: col.height,
                });
            }
        }
    }
    Ok(Injection {
        map,
        tower,
        assignments,
        origins,
        tower_depth,
    })
}
