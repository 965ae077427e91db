//! Kakutani-Rokhlin tower partitions and first-return data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, InvariantMeasure, OdometerSystem};
use crate::rational::Rational;
use crate::report::Report;

/// Levels `T^j base` for `0 ≤ j < height`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Column {
    pub base: ClopenSet,
    pub height: u64,
}

impl Column {
    pub fn level(&self, j: u64) -> ClopenSet {
        self.base.apply_t(j as i64)
    }

    pub fn top(&self) -> ClopenSet {
        self.level(self.height - 1)
    }
}

/// `(column, level)` holding a cell.
type CellOwner = (usize, u64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KRPartition {
    #[serde(skip)]
    system: OdometerSystem,
    columns: Vec<Column>,
}

/// First-return decomposition of a clopen set: `(piece, time)` pairs sorted by time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReturnTimeProfile {
    pub pieces: Vec<(ClopenSet, u64)>,
}

impl ReturnTimeProfile {
    pub fn time_of_cell(&self, depth: u32, index: u64) -> Option<u64> {
        self.pieces
            .iter()
            .find(|(p, _)| p.contains_cell(depth, index))
            .map(|&(_, t)| t)
    }
}

/// Exact first-return times to `a` under `T`.
///
/// On depth-`n` cylinders `T` is `+1 mod D(n)`, so the return time of a cell
/// is the gap to the next cell of `a` around the cycle.
pub fn return_times(m: &InvariantMeasure, a: &ClopenSet) -> Result<ReturnTimeProfile> {
    m.check(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet("the set"));
    }
    let system = a.system();
    let d = system.denominator(a.depth())?;
    let cells = a.indices();
    let mut by_time: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (i, &c) in cells.iter().enumerate() {
        let time = match cells.get(i + 1) {
            Some(&next) => next - c,
            None => cells[0] + d - c,
        };
        by_time.entry(time).or_default().push(c);
    }
    let pieces = by_time
        .into_iter()
        .map(|(t, cs)| Ok((ClopenSet::from_indices(system, a.depth(), cs)?, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReturnTimeProfile { pieces })
}

/// One column per distinct first-return time of `base`.
pub fn tower_over_base(m: &InvariantMeasure, base: &ClopenSet) -> Result<KRPartition> {
    if base.is_empty() {
        return Err(Error::EmptySet("tower base"));
    }
    let profile = return_times(m, base)?;
    let columns = profile
        .pieces
        .into_iter()
        .map(|(base, height)| Column { base, height })
        .collect();
    Ok(KRPartition {
        system: m.system().clone(),
        columns,
    })
}

/// A tower over an all-zero cylinder whose every height exceeds `n`.
pub fn tall_tower(m: &InvariantMeasure, n: u64) -> Result<KRPartition> {
    let system = m.system();
    let mut depth = 0u32;
    while system.denominator(depth)? <= n {
        depth += 1;
    }
    tower_over_base(m, &ClopenSet::cylinder(system, &vec![0; depth as usize])?)
}

/// Splits each column of `p` by the itinerary of its base cells through the cells of `q`.
pub fn refine_tower(p: &KRPartition, q: &[ClopenSet]) -> Result<KRPartition> {
    let system = &p.system;
    let depth = p
        .columns
        .iter()
        .map(|c| c.base.depth())
        .chain(q.iter().map(|s| s.depth()))
        .max()
        .unwrap_or(0);
    let labels = partition_labels(system, q, depth)?;
    let d = system.denominator(depth)?;
    let mut columns = Vec::new();
    for col in &p.columns {
        let mut groups: HashMap<Vec<u32>, Vec<u64>> = HashMap::new();
        let mut order: Vec<Vec<u32>> = Vec::new();
        for b in col.base.cells_at(depth)? {
            let itinerary: Vec<u32> = (0..col.height)
                .map(|j| labels[((b + j) % d) as usize])
                .collect();
            let entry = groups.entry(itinerary.clone()).or_default();
            if entry.is_empty() {
                order.push(itinerary);
            }
            entry.push(b);
        }
        let mut refined: Vec<(u64, Column)> = order
            .into_iter()
            .map(|it| {
                let cells = groups.remove(&it).expect("grouped");
                let key = cells
                    .iter()
                    .map(|&c| system.lex_key(c, depth))
                    .min()
                    .expect("nonempty group");
                let base = ClopenSet::from_indices(system, depth, cells)?;
                Ok((
                    key,
                    Column {
                        base,
                        height: col.height,
                    },
                ))
            })
            .collect::<Result<_>>()?;
        refined.sort_by_key(|(k, _)| *k);
        columns.extend(refined.into_iter().map(|(_, c)| c));
    }
    Ok(KRPartition {
        system: system.clone(),
        columns,
    })
}

/// Towers over the cylinders `[w_1 … w_{k}]` of the zero-extended target, depth `k = 1..=count`.
pub fn nested_towers(
    m: &InvariantMeasure,
    target_word: &[u8],
    count: u32,
) -> Result<Vec<KRPartition>> {
    let system = m.system();
    system.check_digits(target_word)?;
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    (1..=count)
        .map(|depth| {
            let mut prefix: Vec<u8> = target_word.iter().copied().take(depth as usize).collect();
            prefix.resize(depth as usize, 0);
            tower_over_base(m, &ClopenSet::cylinder(system, &prefix)?)
        })
        .collect()
}

/// Labels each depth-`depth` cell by the index of the cell of `q` containing it.
fn partition_labels(system: &OdometerSystem, q: &[ClopenSet], depth: u32) -> Result<Vec<u32>> {
    let d = system.denominator(depth)?;
    if d > 1 << 26 {
        return Err(Error::Budget(format!("{d} cylinders at depth {depth}")));
    }
    let mut labels = vec![u32::MAX; d as usize];
    for (i, cell) in q.iter().enumerate() {
        if cell.system() != system {
            return Err(Error::MismatchedSystems);
        }
        for c in cell.cells_at(depth)? {
            if labels[c as usize] != u32::MAX {
                return Err(Error::NotPartition(format!(
                    "cells {} and {i} overlap",
                    labels[c as usize]
                )));
            }
            labels[c as usize] = i as u32;
        }
    }
    if let Some(c) = labels.iter().position(|&l| l == u32::MAX) {
        let word = OdometerSystem::format_word(&system.digits_of(c as u64, depth));
        return Err(Error::NotPartition(format!(
            "cylinder {word} is not covered"
        )));
    }
    Ok(labels)
}

impl KRPartition {
    pub fn new(system: &OdometerSystem, columns: Vec<Column>) -> Result<Self> {
        for c in &columns {
            if c.base.system() != system {
                return Err(Error::MismatchedSystems);
            }
            if c.height == 0 || c.base.is_empty() {
                return Err(Error::Precondition(
                    "columns need a nonempty base and positive height".into(),
                ));
            }
        }
        Ok(Self {
            system: system.clone(),
            columns,
        })
    }

    pub fn system(&self) -> &OdometerSystem {
        &self.system
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn bases(&self) -> Result<ClopenSet> {
        ClopenSet::union_all(&self.system, self.columns.iter().map(|c| &c.base))
    }

    /// All levels, column by column, bottom to top.
    pub fn levels(&self) -> Vec<Vec<ClopenSet>> {
        self.columns
            .iter()
            .map(|c| (0..c.height).map(|j| c.level(j)).collect())
            .collect()
    }

    fn max_depth(&self) -> u32 {
        self.columns
            .iter()
            .map(|c| c.base.depth())
            .max()
            .unwrap_or(0)
    }

    /// Column and level of every depth-`depth` cell, or `None` where no level covers it.
    fn cell_owners(&self, depth: u32) -> Result<(Vec<Option<CellOwner>>, usize)> {
        let d = self.system.denominator(depth)?;
        let mut owner = vec![None; d as usize];
        let mut overlaps = 0;
        for (i, col) in self.columns.iter().enumerate() {
            for b in col.base.cells_at(depth)? {
                for j in 0..col.height {
                    let c = ((b + j) % d) as usize;
                    if owner[c].is_some() {
                        overlaps += 1;
                    } else {
                        owner[c] = Some((i, j));
                    }
                }
            }
        }
        Ok((owner, overlaps))
    }

    /// Checks the partition, stepping and wrap-around invariants and the mass identity.
    pub fn check(&self) -> Result<Report> {
        let mut report = Report::new();
        let depth = self.max_depth();
        let (owner, overlaps) = self.cell_owners(depth)?;
        let uncovered = owner.iter().filter(|o| o.is_none()).count();
        report.push(
            "levels_partition_space",
            overlaps == 0 && uncovered == 0,
            format!("{overlaps} overlapping and {uncovered} uncovered cylinders at depth {depth}"),
        );

        let mut bad_steps = 0;
        let mut tops = Vec::new();
        for col in &self.columns {
            let mut level = col.base.clone();
            for j in 1..col.height {
                let next = col.level(j);
                if level.apply_t(1) != next {
                    bad_steps += 1;
                }
                level = next;
            }
            tops.push(level);
        }
        report.push(
            "levels_step_by_t",
            bad_steps == 0,
            format!("{bad_steps} levels not mapped onto their successor"),
        );

        let tops = ClopenSet::union_all(&self.system, &tops)?;
        let bases = self.bases()?;
        report.push(
            "tops_map_onto_bases",
            tops.apply_t(1) == bases,
            format!("T(tops) = {}, bases = {}", tops.apply_t(1), bases),
        );

        let mass: Rational = self
            .columns
            .iter()
            .map(|c| c.base.measure() * Rational::from_integer(c.height as i128))
            .sum();
        report.push(
            "mass_identity",
            mass.is_one(),
            format!("Σ h·μ(base) = {mass}"),
        );
        Ok(report)
    }

    /// Whether every level of `self` lies inside one level of `coarser`.
    pub fn refines(&self, coarser: &KRPartition) -> Result<bool> {
        if self.system != coarser.system {
            return Err(Error::MismatchedSystems);
        }
        let depth = self.max_depth().max(coarser.max_depth());
        let (coarse_owner, _) = coarser.cell_owners(depth)?;
        let d = self.system.denominator(depth)?;
        for col in &self.columns {
            let cells = col.base.cells_at(depth)?;
            for j in 0..col.height {
                let mut owners = cells.iter().map(|&b| coarse_owner[((b + j) % d) as usize]);
                let first = owners.next().flatten();
                if first.is_none() || owners.any(|o| o != first) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether every level lies inside a single cell of `q`.
    pub fn refines_partition(&self, q: &[ClopenSet]) -> Result<bool> {
        let depth = self
            .max_depth()
            .max(q.iter().map(|s| s.depth()).max().unwrap_or(0));
        let labels = partition_labels(&self.system, q, depth)?;
        let d = self.system.denominator(depth)?;
        for col in &self.columns {
            let cells = col.base.cells_at(depth)?;
            for j in 0..col.height {
                let first = labels[((cells[0] + j) % d) as usize];
                if cells
                    .iter()
                    .any(|&b| labels[((b + j) % d) as usize] != first)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn summary(&self) -> String {
        let n = self.columns.len();
        let heights: Vec<String> = self.columns.iter().map(|c| c.height.to_string()).collect();
        format!(
            "{n} column{}, height{} {}",
            if n == 1 { "" } else { "s" },
            if n == 1 { "" } else { "s" },
            heights.join(",")
        )
    }
}

impl fmt::Display for KRPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.columns {
            writeln!(f, "base={} height={}", c.base, c.height)?;
        }
        Ok(())
    }
}
