use std::fmt;

use serde::{Serialize, Serializer};

use super::system::OdometerSystem;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Refusing to enumerate more cells than this keeps dense operations bounded.
pub(crate) const MAX_ENUMERATED_CELLS: u64 = 1 << 26;

/// A finite union of cylinders, kept at the smallest depth that represents it.
///
/// Cells are stored as orbit indices (see [`OdometerSystem::index_of`]) in
/// increasing order, so `T` on the set is `+1 mod D(depth)` on every cell.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    system: OdometerSystem,
    depth: u32,
    cells: Vec<u64>,
}

impl ClopenSet {
    pub fn empty(system: &OdometerSystem) -> Self {
        Self {
            system: system.clone(),
            depth: 0,
            cells: Vec::new(),
        }
    }

    pub fn whole(system: &OdometerSystem) -> Self {
        Self {
            system: system.clone(),
            depth: 0,
            cells: vec![0],
        }
    }

    /// The cylinder of points whose first digits are `word`.
    pub fn cylinder(system: &OdometerSystem, word: &[u8]) -> Result<Self> {
        let index = system.index_of(word)?;
        Self::from_indices(system, word.len() as u32, vec![index])
    }

    pub fn from_words<W: AsRef<[u8]>>(system: &OdometerSystem, words: &[W]) -> Result<Self> {
        let Some(first) = words.first() else {
            return Ok(Self::empty(system));
        };
        let depth = first.as_ref().len();
        let mut cells = Vec::with_capacity(words.len());
        for w in words {
            let w = w.as_ref();
            if w.len() != depth {
                return Err(Error::Parse(format!(
                    "words of a clopen set must share one length ({} vs {})",
                    depth,
                    w.len()
                )));
            }
            cells.push(system.index_of(w)?);
        }
        Self::from_indices(system, depth as u32, cells)
    }

    /// Builds a set from orbit indices at `depth`; order and duplicates do not matter.
    pub fn from_indices(system: &OdometerSystem, depth: u32, mut cells: Vec<u64>) -> Result<Self> {
        let d = system.denominator(depth)?;
        if let Some(&bad) = cells.iter().find(|&&c| c >= d) {
            return Err(Error::Precondition(format!(
                "cell index {bad} out of range at depth {depth}"
            )));
        }
        cells.sort_unstable();
        cells.dedup();
        let mut set = Self {
            system: system.clone(),
            depth,
            cells,
        };
        set.canonicalize();
        Ok(set)
    }

    /// Parses `whole`, `empty` or comma-separated words such as `000,101`.
    pub fn parse(system: &OdometerSystem, text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "" => Err(Error::Parse("empty clopen literal (use `empty`)".into())),
            "whole" => Ok(Self::whole(system)),
            "empty" => Ok(Self::empty(system)),
            _ => {
                let words = text
                    .split(',')
                    .map(|w| system.parse_word(w.trim()))
                    .collect::<Result<Vec<_>>>()?;
                Self::from_words(system, &words)
            }
        }
    }

    pub fn system(&self) -> &OdometerSystem {
        &self.system
    }

    /// Canonical (minimal) representation depth.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Orbit indices at the canonical depth, increasing.
    pub fn indices(&self) -> &[u64] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.depth == 0 && !self.cells.is_empty()
    }

    /// Number of cylinders at the canonical depth.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// μ of the set under the unique invariant measure.
    pub fn measure(&self) -> Rational {
        let d = self
            .system
            .denominator(self.depth)
            .expect("depth was validated");
        Rational::new(self.cells.len() as i128, d as i128)
    }

    /// Orbit indices of all depth-`depth` cylinders inside the set, increasing.
    pub fn cells_at(&self, depth: u32) -> Result<Vec<u64>> {
        if depth < self.depth {
            return Err(Error::DepthBelowRepresentation {
                requested: depth,
                current: self.depth,
            });
        }
        let base = self.system.denominator(self.depth)?;
        let target = self.system.denominator(depth)?;
        let copies = target / base;
        let total = copies.saturating_mul(self.cells.len() as u64);
        if total > MAX_ENUMERATED_CELLS {
            return Err(Error::Budget(format!(
                "refining to depth {depth} would enumerate {total} cylinders"
            )));
        }
        let mut out = Vec::with_capacity(total as usize);
        for t in 0..copies {
            out.extend(self.cells.iter().map(|&c| c + t * base));
        }
        Ok(out)
    }

    /// The depth-`depth` words covering the set, in lexicographic order.
    pub fn refine(&self, depth: u32) -> Result<Vec<Vec<u8>>> {
        let mut cells = self.cells_at(depth)?;
        cells.sort_by_key(|&c| self.system.lex_key(c, depth));
        Ok(cells
            .into_iter()
            .map(|c| self.system.digits_of(c, depth))
            .collect())
    }

    /// Words at the canonical depth in lexicographic order.
    pub fn words(&self) -> Vec<Vec<u8>> {
        self.refine(self.depth).expect("canonical depth")
    }

    /// Whether the point with digit prefix `point` (extended by zeros) lies in the set.
    pub fn contains_point(&self, point: &[u8]) -> bool {
        let n = self.depth as usize;
        let mut prefix: Vec<u8> = point.iter().copied().take(n).collect();
        prefix.resize(n, 0);
        match self.system.index_of(&prefix) {
            Ok(i) => self.cells.binary_search(&i).is_ok(),
            Err(_) => false,
        }
    }

    pub fn contains_cell(&self, depth: u32, index: u64) -> bool {
        if depth < self.depth {
            return false;
        }
        let d = self.system.denominator(self.depth).expect("validated");
        self.cells.binary_search(&(index % d)).is_ok()
    }

    fn same_system(&self, other: &Self) -> Result<()> {
        if self.system == other.system {
            Ok(())
        } else {
            Err(Error::MismatchedSystems)
        }
    }

    fn merge(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.same_system(other)?;
        let depth = self.depth.max(other.depth);
        let a = self.cells_at(depth)?;
        let b = other.cells_at(depth)?;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (x, in_a, in_b) = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    (x, true, true)
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    (x, true, false)
                }
                (Some(&x), None) => {
                    i += 1;
                    (x, true, false)
                }
                (_, Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (None, None) => unreachable!(),
            };
            if keep(in_a, in_b) {
                out.push(x);
            }
        }
        let mut set = Self {
            system: self.system.clone(),
            depth,
            cells: out,
        };
        set.canonicalize();
        Ok(set)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.merge(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.merge(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.merge(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        self.merge(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        self.difference_from_whole()
    }

    fn difference_from_whole(&self) -> Self {
        let d = self.system.denominator(self.depth).expect("validated");
        let mut out = Vec::with_capacity((d as usize).saturating_sub(self.cells.len()));
        let mut it = self.cells.iter().peekable();
        for c in 0..d {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                out.push(c);
            }
        }
        let mut set = Self {
            system: self.system.clone(),
            depth: self.depth,
            cells: out,
        };
        set.canonicalize();
        set
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }

    /// Union of many sets over `system`.
    pub fn union_all<'a>(
        system: &OdometerSystem,
        sets: impl IntoIterator<Item = &'a ClopenSet>,
    ) -> Result<Self> {
        let sets: Vec<&ClopenSet> = sets.into_iter().collect();
        for s in &sets {
            if s.system != *system {
                return Err(Error::MismatchedSystems);
            }
        }
        let depth = sets.iter().map(|s| s.depth).max().unwrap_or(0);
        let mut cells = Vec::new();
        for s in &sets {
            cells.extend(s.cells_at(depth)?);
        }
        Self::from_indices(system, depth, cells)
    }

    /// `T^power` of the set; negative powers use the inverse odometer.
    pub fn apply_t(&self, power: i64) -> Self {
        if self.depth == 0 || self.cells.is_empty() {
            return self.clone();
        }
        let d = self.system.denominator(self.depth).expect("validated");
        let shift = power.rem_euclid(d as i64) as u64;
        let cells = self.cells.iter().map(|&c| (c + shift) % d).collect();
        Self::from_indices(&self.system, self.depth, cells).expect("indices stay in range")
    }

    /// Image under the digit reflection `d_i ↦ b_i − 1 − d_i`, which conjugates `T` to `T^{-1}`.
    pub fn reflect(&self) -> Self {
        let d = self.system.denominator(self.depth).expect("validated");
        let cells = self.cells.iter().map(|&c| d - 1 - c).collect();
        Self::from_indices(&self.system, self.depth, cells).expect("indices stay in range")
    }

    /// Merges full sibling families until no further merge applies.
    fn canonicalize(&mut self) {
        while self.depth > 0 && !self.cells.is_empty() {
            let p = self
                .system
                .denominator(self.depth - 1)
                .expect("shallower depth is representable");
            let b = self.system.base_at(self.depth as usize - 1) as usize;
            if !self.cells.len().is_multiple_of(b) {
                break;
            }
            let block = self.cells.len() / b;
            let ok = (1..b).all(|c| {
                (0..block).all(|t| self.cells[c * block + t] == self.cells[t] + c as u64 * p)
            });
            if !ok {
                break;
            }
            self.cells.truncate(block);
            self.depth -= 1;
        }
        if self.cells.is_empty() {
            self.depth = 0;
        }
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        if self.is_whole() {
            return f.write_str("whole");
        }
        let words: Vec<String> = self
            .words()
            .iter()
            .map(|w| OdometerSystem::format_word(w))
            .collect();
        f.write_str(&words.join(","))
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClopenSet({self})")
    }
}

impl Serialize for ClopenSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn dy(text: &str) -> ClopenSet {
        ClopenSet::parse(&OdometerSystem::dyadic(), text).unwrap()
    }

    #[test]
    fn refine_splits_cylinders() {
        let s = dy("0");
        assert_eq!(s.refine(2).unwrap(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(dy("whole").refine(2).unwrap().len(), 4);
        assert!(dy("00,11").refine(1).is_err());
    }

    #[test]
    fn canonical_form_merges_siblings() {
        assert_eq!(dy("00,01").to_string(), "0");
        assert_eq!(dy("0,1").to_string(), "whole");
        assert_eq!(dy("00,01,10").to_string(), "00,01,10");
        assert_eq!(dy("000,001,010,011,100,101").to_string(), "00,01,10");
        assert_eq!(dy("110,111,000").depth(), 3);
        let s = dy("00,01,10");
        let again = ClopenSet::from_words(s.system(), &s.refine(4).unwrap()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn boolean_ops() {
        assert!(dy("0").union(&dy("1")).unwrap().is_whole());
        assert!(dy("00").intersection(&dy("01")).unwrap().is_empty());
        let c = dy("000").complement();
        assert_eq!(c.refine(3).unwrap().len(), 7);
        assert_eq!(dy("0").difference(&dy("01")).unwrap().to_string(), "00");
    }

    #[test]
    fn odometer_action() {
        assert_eq!(dy("00").apply_t(1).to_string(), "10");
        assert_eq!(dy("11").apply_t(1).to_string(), "00");
        let e = dy("010");
        assert_eq!(e.apply_t(1).apply_t(-1), e);
        assert_eq!(dy("0").apply_t(1).to_string(), "1");
    }

    #[test]
    fn measures() {
        assert_eq!(dy("0").measure(), ratio(1, 2));
        assert_eq!(dy("000,101").measure(), ratio(2, 8));
        let e = dy("00,11");
        assert_eq!(e.apply_t(1).measure(), e.measure());
        assert_eq!(dy("empty").measure(), ratio(0, 1));
    }

    #[test]
    fn reflection_conjugates_t() {
        let e = dy("010,111");
        assert_eq!(e.apply_t(1).reflect(), e.reflect().apply_t(-1));
        assert_eq!(dy("0").reflect().to_string(), "1");
    }

    #[test]
    fn parse_rejects_blank_and_ragged() {
        let s = OdometerSystem::dyadic();
        assert!(ClopenSet::parse(&s, "").is_err());
        assert!(ClopenSet::parse(&s, "0,10").is_err());
        assert!(ClopenSet::parse(&s, "2").is_err());
    }

    #[test]
    fn point_membership() {
        let s = dy("01,10,11");
        assert!(s.contains_point(&[0, 1, 1]));
        assert!(s.contains_point(&[1]));
        assert!(!s.contains_point(&[0]));
    }
}
