use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest cylinder count a system may address at one depth.
pub const MAX_CYLINDERS: u64 = 1 << 62;

/// An adic odometer on `∏ {0, …, b_i − 1}` with eventually periodic bases.
///
/// The first digit is the least significant one: `T` adds one to it and
/// carries to the right. Bases are stored as one minimal period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OdometerSystem {
    bases: Arc<[u32]>,
}

impl OdometerSystem {
    pub fn new(bases: &[u32]) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::InvalidBases("at least one base is required".into()));
        }
        if let Some(b) = bases.iter().find(|&&b| !(2..=36).contains(&b)) {
            return Err(Error::InvalidBases(format!("base {b} is outside 2..=36")));
        }
        let period = minimal_period(bases);
        Ok(Self {
            bases: bases[..period].into(),
        })
    }

    pub fn dyadic() -> Self {
        Self::new(&[2]).expect("valid base")
    }

    pub fn triadic() -> Self {
        Self::new(&[3]).expect("valid base")
    }

    /// Parses a comma-separated base list such as `2` or `2,3`.
    pub fn parse(text: &str) -> Result<Self> {
        let bases = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad base {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&bases)
    }

    /// One period of the base sequence.
    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn period(&self) -> usize {
        self.bases.len()
    }

    /// Base of the digit at 0-indexed `position`.
    pub fn base_at(&self, position: usize) -> u32 {
        self.bases[position % self.bases.len()]
    }

    /// Product of one period of bases.
    pub fn period_product(&self) -> u64 {
        self.bases.iter().map(|&b| b as u64).product()
    }

    /// `b_1 ⋯ b_depth`, the number of depth-`depth` cylinders.
    pub fn denominator(&self, depth: u32) -> Result<u64> {
        let mut d: u64 = 1;
        for i in 0..depth as usize {
            d = d
                .checked_mul(self.base_at(i) as u64)
                .filter(|&d| d <= MAX_CYLINDERS)
                .ok_or(Error::DepthOverflow(depth))?;
        }
        Ok(d)
    }

    /// Orbit index of a word: digit 0 is least significant, so `T` acts as `+1 mod D(n)`.
    pub fn index_of(&self, digits: &[u8]) -> Result<u64> {
        self.check_digits(digits)?;
        let mut index = 0u64;
        let mut scale = 1u64;
        for (i, &d) in digits.iter().enumerate() {
            index += d as u64 * scale;
            scale = scale
                .checked_mul(self.base_at(i) as u64)
                .ok_or(Error::DepthOverflow(digits.len() as u32))?;
        }
        Ok(index)
    }

    pub fn digits_of(&self, mut index: u64, depth: u32) -> Vec<u8> {
        (0..depth as usize)
            .map(|i| {
                let b = self.base_at(i) as u64;
                let d = (index % b) as u8;
                index /= b;
                d
            })
            .collect()
    }

    /// Key whose integer order is the lexicographic order of the words (digit 0 first).
    pub fn lex_key(&self, index: u64, depth: u32) -> u64 {
        let digits = self.digits_of(index, depth);
        digits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &d)| acc * self.base_at(i) as u64 + d as u64)
    }

    pub fn check_digits(&self, digits: &[u8]) -> Result<()> {
        for (position, &d) in digits.iter().enumerate() {
            let base = self.base_at(position);
            if d as u32 >= base {
                return Err(Error::InvalidDigit {
                    position,
                    digit: d as u32,
                    base,
                });
            }
        }
        Ok(())
    }

    pub fn format_word(digits: &[u8]) -> String {
        digits
            .iter()
            .map(|&d| std::char::from_digit(d as u32, 36).expect("digit below 36"))
            .collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<u8>> {
        let digits = text
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in word {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.check_digits(&digits)?;
        Ok(digits)
    }
}

impl fmt::Debug for OdometerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OdometerSystem({self})")
    }
}

impl fmt::Display for OdometerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bases.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn minimal_period(bases: &[u32]) -> usize {
    let n = bases.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| bases[i] == bases[i % p]))
        .unwrap_or(n)
}
