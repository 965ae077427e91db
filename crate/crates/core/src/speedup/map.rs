use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, OdometerSystem};

/// `S = T^{jump}` on `domain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub domain: ClopenSet,
    pub jump: u64,
}

impl Piece {
    pub fn image(&self) -> ClopenSet {
        self.domain.apply_t(self.jump as i64)
    }
}

/// A speedup (or partial speedup) given by clopen pieces with constant jumps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpeedupMap {
    #[serde(skip)]
    system: OdometerSystem,
    pieces: Vec<Piece>,
}

impl SpeedupMap {
    pub fn new(system: &OdometerSystem, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.iter().any(|p| p.domain.system() != system) {
            return Err(Error::MismatchedSystems);
        }
        Ok(Self {
            system: system.clone(),
            pieces,
        })
    }

    pub fn empty(system: &OdometerSystem) -> Self {
        Self {
            system: system.clone(),
            pieces: Vec::new(),
        }
    }

    pub fn system(&self) -> &OdometerSystem {
        &self.system
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn push(&mut self, domain: ClopenSet, jump: u64) {
        debug_assert_eq!(domain.system(), &self.system);
        if !domain.is_empty() {
            self.pieces.push(Piece { domain, jump });
        }
    }

    pub fn append(&mut self, other: SpeedupMap) {
        self.pieces.extend(other.pieces);
    }

    pub fn domain(&self) -> Result<ClopenSet> {
        ClopenSet::union_all(&self.system, self.pieces.iter().map(|p| &p.domain))
    }

    pub fn image(&self) -> Result<ClopenSet> {
        let images: Vec<ClopenSet> = self.pieces.iter().map(Piece::image).collect();
        ClopenSet::union_all(&self.system, &images)
    }

    /// Deepest representation depth among the pieces.
    pub fn depth(&self) -> u32 {
        self.pieces
            .iter()
            .map(|p| p.domain.depth())
            .max()
            .unwrap_or(0)
    }

    /// Jump on the depth-`depth` cell `index`, if the cell lies in a single piece.
    pub fn jump_at(&self, depth: u32, index: u64) -> Option<u64> {
        self.pieces
            .iter()
            .find(|p| p.domain.contains_cell(depth, index))
            .map(|p| p.jump)
    }

    /// Level sets `{p = k}` of the jump function.
    pub fn level_sets(&self) -> Result<BTreeMap<u64, ClopenSet>> {
        let mut grouped: BTreeMap<u64, Vec<&ClopenSet>> = BTreeMap::new();
        for p in &self.pieces {
            grouped.entry(p.jump).or_default().push(&p.domain);
        }
        grouped
            .into_iter()
            .map(|(k, sets)| Ok((k, ClopenSet::union_all(&self.system, sets)?)))
            .collect()
    }

    /// The same map with pieces of equal jump merged.
    pub fn simplified(&self) -> Result<Self> {
        let pieces = self
            .level_sets()?
            .into_iter()
            .map(|(jump, domain)| Piece { domain, jump })
            .collect();
        Ok(Self {
            system: self.system.clone(),
            pieces,
        })
    }

    /// Parses lines of the form `<words> -> jump <k>`.
    pub fn parse(system: &OdometerSystem, text: &str) -> Result<Self> {
        let mut pieces = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| {
                Error::Parse(format!("expected `<words> -> jump <k>` in {line:?}"))
            })?;
            let jump = rhs
                .trim()
                .strip_prefix("jump")
                .map(str::trim)
                .and_then(|k| k.parse::<u64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad jump in {line:?}")))?;
            pieces.push(Piece {
                domain: ClopenSet::parse(system, lhs)?,
                jump,
            });
        }
        Self::new(system, pieces)
    }
}

impl fmt::Display for SpeedupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            writeln!(f, "{} -> jump {}", p.domain, p.jump)?;
        }
        Ok(())
    }
}
