use serde::Serialize;

use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, InvariantMeasure, OdometerSystem};
use crate::report::Report;

use super::map::SpeedupMap;
use super::selection::{subset_condition, transfer_partition};
use super::verify::{verify_speedup, ImageExpectation};

/// A homeomorphism `X₂ → X₁` that rewrites the first `depth` digits and keeps the tail.
///
/// `images[i]` is the depth-`depth` orbit index in `X₁` of the `X₂` cylinder with index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixBijection {
    depth: u32,
    images: Vec<u64>,
}

impl PrefixBijection {
    pub fn new(depth: u32, images: Vec<u64>) -> Result<Self> {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &v)| v != i as u64) {
            return Err(Error::Precondition(
                "prefix map must permute the cylinders of its depth".into(),
            ));
        }
        Ok(Self { depth, images })
    }

    pub fn identity(system: &OdometerSystem, depth: u32) -> Result<Self> {
        Self::new(depth, (0..system.denominator(depth)?).collect())
    }

    /// Builds the map from `(X₂ word, X₁ word)` pairs of equal length.
    pub fn from_words(
        x2: &OdometerSystem,
        x1: &OdometerSystem,
        pairs: &[(Vec<u8>, Vec<u8>)],
    ) -> Result<Self> {
        let depth = pairs.first().map_or(0, |(w, _)| w.len() as u32);
        let mut images = vec![u64::MAX; x2.denominator(depth)? as usize];
        for (from, to) in pairs {
            if from.len() as u32 != depth || to.len() as u32 != depth {
                return Err(Error::Parse(
                    "prefix map words must share one length".into(),
                ));
            }
            images[x2.index_of(from)? as usize] = x1.index_of(to)?;
        }
        Self::new(depth, images)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    fn check_compatible(&self, x1: &OdometerSystem, x2: &OdometerSystem) -> Result<()> {
        let d = self.depth;
        if x1.denominator(d)? != x2.denominator(d)?
            || self.images.len() as u64 != x2.denominator(d)?
        {
            return Err(Error::Precondition(format!(
                "prefix map of depth {d} does not match both systems"
            )));
        }
        let span = d as usize + x1.period() * x2.period();
        if (d as usize..span).any(|i| x1.base_at(i) != x2.base_at(i)) {
            return Err(Error::Precondition(
                "systems differ beyond the prefix depth, so the tail cannot be kept".into(),
            ));
        }
        Ok(())
    }

    /// Image in `X₁` of a clopen set of `X₂`.
    pub fn apply(&self, set: &ClopenSet, x1: &OdometerSystem) -> Result<ClopenSet> {
        let x2 = set.system();
        let depth = set.depth().max(self.depth);
        let dd = x2.denominator(self.depth)?;
        let cells = set
            .cells_at(depth)?
            .into_iter()
            .map(|c| self.images[(c % dd) as usize] + dd * (c / dd))
            .collect();
        ClopenSet::from_indices(x1, depth, cells)
    }
}

/// One row of the level correspondence `Φ₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiEntry {
    pub column: usize,
    pub level: u64,
    pub x1: ClopenSet,
    pub x2: ClopenSet,
}

/// A tower of `X₂` copied into `X₁` and straightened so that `S` climbs it.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyStage {
    pub a0: ClopenSet,
    pub z0: ClopenSet,
    pub target: String,
    pub levels_x1: Vec<ClopenSet>,
    pub levels_x2: Vec<ClopenSet>,
    pub map: SpeedupMap,
    pub phi0: Vec<PhiEntry>,
    #[serde(skip)]
    target_digits: Vec<u8>,
}

/// Copies the tower over `[0^stage_depth]` of `X₂` into `X₁` through `f`, then
/// exchanges equal-measure pieces so that the base lies in `A₀ = [a0_word]` and
/// holds the point `a0_word 0 0 …`, and the top lies in `T⁻¹A₀` and holds that
/// point's preimage. `S` is defined on every level but the top, sending each
/// level onto the next one.
pub fn conjugacy_stage(
    m1: &InvariantMeasure,
    m2: &InvariantMeasure,
    f: &PrefixBijection,
    a0_word: &[u8],
    stage_depth: u32,
) -> Result<ConjugacyStage> {
    let (x1, x2) = (m1.system(), m2.system());
    f.check_compatible(x1, x2)?;
    if a0_word.is_empty() {
        return Err(Error::Precondition("A₀ must be a proper cylinder".into()));
    }
    let a0 = ClopenSet::cylinder(x1, a0_word)?;
    let z0 = a0.apply_t(-1);
    let base2 = ClopenSet::cylinder(x2, &vec![0; stage_depth as usize])?;
    let certified = m2.small_clopen(a0.measure())?;
    if base2.measure() >= a0.measure() {
        return Err(Error::Precondition(format!(
            "measure budget: μ(tower base) = {} is not below μ(A₀) = {}; a stage depth of at least {} is needed",
            base2.measure(),
            a0.measure(),
            certified.depth()
        )));
    }
    let height = x2.denominator(stage_depth)?;
    let levels_x2: Vec<ClopenSet> = (0..height).map(|j| base2.apply_t(j as i64)).collect();
    let mut levels = levels_x2
        .iter()
        .map(|l| f.apply(l, x1))
        .collect::<Result<Vec<_>>>()?;
    let top = levels.len() - 1;

    move_into(m1, &mut levels, 0, &a0)?;
    let x_depth = a0_word.len() as u32;
    let target = pin_cell(m1, &levels, 0, x_depth, |d| {
        x1.index_of(&extend(a0_word, d))
    })?;
    if let Some((cell, depth)) = target {
        exchange_cell(m1, &mut levels, 0, cell, depth)?;
    }
    move_into(m1, &mut levels, top, &z0)?;
    let pre = pin_cell(m1, &levels, top, x_depth, |d| {
        let dn = x1.denominator(d)?;
        Ok((x1.index_of(&extend(a0_word, d))? + dn - 1) % dn)
    })?;
    if let Some((cell, depth)) = pre {
        exchange_cell(m1, &mut levels, top, cell, depth)?;
    }

    let mut map = SpeedupMap::empty(x1);
    for j in 0..top {
        climb(&levels[j], &levels[j + 1], &mut map)?;
    }
    let phi0 = levels
        .iter()
        .zip(&levels_x2)
        .enumerate()
        .map(|(j, (l1, l2))| PhiEntry {
            column: 0,
            level: j as u64,
            x1: l1.clone(),
            x2: l2.clone(),
        })
        .collect();
    Ok(ConjugacyStage {
        a0,
        z0,
        target: OdometerSystem::format_word(a0_word),
        levels_x1: levels,
        levels_x2,
        map,
        phi0,
        target_digits: a0_word.to_vec(),
    })
}

fn extend(word: &[u8], depth: u32) -> Vec<u8> {
    let mut w: Vec<u8> = word.iter().copied().take(depth as usize).collect();
    w.resize(depth as usize, 0);
    w
}

/// Moves the part of `levels[idx]` outside `region` into `region`, trading
/// equal-measure pieces with the other levels.
fn move_into(
    m: &InvariantMeasure,
    levels: &mut [ClopenSet],
    idx: usize,
    region: &ClopenSet,
) -> Result<()> {
    let outside = levels[idx].difference(region)?;
    if outside.is_empty() {
        return Ok(());
    }
    let free = region.difference(&levels[idx])?;
    let incoming = subset_condition(m, &outside, &free)?;
    let mut donors = Vec::new();
    let mut parts = Vec::new();
    for (j, level) in levels.iter().enumerate() {
        if j == idx {
            continue;
        }
        let part = level.intersection(&incoming)?;
        if !part.is_empty() {
            donors.push(j);
            parts.push(part);
        }
    }
    let returned = transfer_partition(m, &parts, &outside)?;
    for ((j, part), back) in donors.into_iter().zip(&parts).zip(&returned) {
        levels[j] = levels[j].difference(part)?.union(back)?;
    }
    levels[idx] = levels[idx].difference(&outside)?.union(&incoming)?;
    Ok(())
}

/// The cylinder of a point (given by its index at each depth) that is small
/// enough to exchange into `levels[idx]`, or `None` if the point is already there.
fn pin_cell(
    m: &InvariantMeasure,
    levels: &[ClopenSet],
    idx: usize,
    min_depth: u32,
    index_at: impl Fn(u32) -> Result<u64>,
) -> Result<Option<(u64, u32)>> {
    let level = &levels[idx];
    if level.contains_cell(level.depth(), index_at(level.depth())?) {
        return Ok(None);
    }
    let mut depth = levels
        .iter()
        .map(ClopenSet::depth)
        .max()
        .unwrap_or(0)
        .max(min_depth);
    while m.cylinder_mass(depth)? >= level.measure() {
        depth += 1;
    }
    Ok(Some((index_at(depth)?, depth)))
}

/// Swaps the cylinder `cell` into `levels[idx]` against an equal-measure piece of it.
fn exchange_cell(
    m: &InvariantMeasure,
    levels: &mut [ClopenSet],
    idx: usize,
    cell: u64,
    depth: u32,
) -> Result<()> {
    let system = m.system();
    let piece = ClopenSet::from_indices(system, depth, vec![cell])?;
    let holder = levels
        .iter()
        .position(|l| l.contains_cell(depth, cell))
        .expect("levels cover the space");
    let out = subset_condition(m, &piece, &levels[idx])?;
    levels[holder] = levels[holder].difference(&piece)?.union(&out)?;
    levels[idx] = levels[idx].difference(&out)?.union(&piece)?;
    Ok(())
}

/// Pieces of `S` carrying `from` onto `to`: plain `T` when that already
/// works, otherwise the k-th cell of `from` to the k-th cell of `to`.
fn climb(from: &ClopenSet, to: &ClopenSet, map: &mut SpeedupMap) -> Result<()> {
    if &from.apply_t(1) == to {
        map.push(from.clone(), 1);
        return Ok(());
    }
    let system = from.system();
    let depth = from.depth().max(to.depth());
    let d = system.denominator(depth)?;
    let sources = from.cells_at(depth)?;
    let targets = to.cells_at(depth)?;
    debug_assert_eq!(sources.len(), targets.len());
    let mut by_jump: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for (&s, &t) in sources.iter().zip(&targets) {
        by_jump.entry((t + d - s) % d).or_default().push(s);
    }
    for (jump, cells) in by_jump {
        map.push(ClopenSet::from_indices(system, depth, cells)?, jump);
    }
    Ok(())
}

impl ConjugacyStage {
    pub fn height(&self) -> usize {
        self.levels_x1.len()
    }

    pub fn check(&self, m1: &InvariantMeasure, m2: &InvariantMeasure) -> Result<Report> {
        let x1 = m1.system();
        let mut report = Report::new();
        let mismatched = self
            .levels_x1
            .iter()
            .zip(&self.levels_x2)
            .filter(|(a, b)| m1.measure(a).ok() != m2.measure(b).ok())
            .count();
        report.push(
            "level_measures_match",
            mismatched == 0,
            format!("{mismatched} of {} levels differ in measure", self.height()),
        );

        let union = ClopenSet::union_all(x1, &self.levels_x1)?;
        let total: usize = self
            .levels_x1
            .iter()
            .map(|l| {
                l.cells_at(union.depth().max(max_depth(&self.levels_x1)))
                    .map(|c| c.len())
            })
            .sum::<Result<usize>>()?;
        let cells = x1.denominator(union.depth().max(max_depth(&self.levels_x1)))? as usize;
        report.push(
            "levels_partition_space",
            union.is_whole() && total == cells,
            format!("{total} cells over {cells} cylinders"),
        );

        let base = &self.levels_x1[0];
        let top = &self.levels_x1[self.height() - 1];
        report.push(
            "base_inside_a0",
            base.is_subset(&self.a0)?,
            format!("base {base}, A₀ {}", self.a0),
        );
        report.push(
            "target_in_base",
            base.contains_point(&self.target_digits),
            format!("point {}000…", self.target),
        );
        report.push(
            "top_inside_t_inverse_a0",
            top.is_subset(&self.z0)?,
            format!("top {top}, T⁻¹A₀ {}", self.z0),
        );
        let depth = top.depth().max(self.target_digits.len() as u32);
        let dn = x1.denominator(depth)?;
        let pre = (x1.index_of(&extend(&self.target_digits, depth))? + dn - 1) % dn;
        report.push(
            "preimage_in_top",
            top.contains_cell(depth, pre),
            String::new(),
        );

        let mut broken = Vec::new();
        for j in 0..self.height() - 1 {
            let from = &self.levels_x1[j];
            let image: Vec<ClopenSet> = self
                .map
                .pieces()
                .iter()
                .filter(|p| p.domain.is_subset(from).unwrap_or(false))
                .map(|p| p.image())
                .collect();
            if ClopenSet::union_all(x1, &image)? != self.levels_x1[j + 1] {
                broken.push(j);
            }
        }
        report.push(
            "phi0_consistent",
            broken.is_empty(),
            if broken.is_empty() {
                "S(C(0,j)) = C(0,j+1) below the top".to_string()
            } else {
                format!("levels {broken:?} are not carried onto their successor")
            },
        );

        let domain = base.union(top)?.complement().union(base)?;
        let image = base.union(top)?.complement().union(top)?;
        let verified = verify_speedup(&self.map, &domain, &ImageExpectation::Exact(image), None)?;
        report.extend("map.", verified);
        Ok(report)
    }
}

fn max_depth(sets: &[ClopenSet]) -> u32 {
    sets.iter().map(ClopenSet::depth).max().unwrap_or(0)
}
