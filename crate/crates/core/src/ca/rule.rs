use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported neighborhood radius (rule tables of up to 2^15 entries).
pub const MAX_RADIUS: u32 = 7;

/// Truth table of a homogeneous binary CA rule with neighborhood radius `r`.
///
/// Entry `p` holds the output for the neighborhood whose `2r + 1` cells, read
/// left to right, spell `p` in binary (leftmost neighbor is the most
/// significant bit). Read as an integer, the table is the Wolfram rule number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RuleTable {
    radius: u32,
    words: Vec<u64>,
}

pub(crate) fn check_radius(radius: u32) -> Result<()> {
    if radius == 0 || radius > MAX_RADIUS {
        return Err(Error::InvalidRadius(radius));
    }
    Ok(())
}

/// Number of entries in a rule table of the given radius.
pub fn table_len(radius: u32) -> usize {
    1usize << (2 * radius + 1)
}

impl RuleTable {
    pub fn zeros(radius: u32) -> Result<Self> {
        check_radius(radius)?;
        let words = vec![0; table_len(radius).div_ceil(64)];
        Ok(Self { radius, words })
    }

    pub fn ones(radius: u32) -> Result<Self> {
        let mut t = Self::zeros(radius)?;
        for p in 0..t.len() {
            t.set(p, true);
        }
        Ok(t)
    }

    /// Table whose output is the center cell of the neighborhood.
    pub fn identity(radius: u32) -> Result<Self> {
        let mut t = Self::zeros(radius)?;
        for p in 0..t.len() {
            t.set(p, (p >> radius) & 1 == 1);
        }
        Ok(t)
    }

    /// Builds a table from its Wolfram number. Numbers wider than the table are rejected.
    pub fn decode(number: u128, radius: u32) -> Result<Self> {
        let mut t = Self::zeros(radius)?;
        let len = t.len();
        if len < 128 && number >> len != 0 {
            return Err(Error::RuleOutOfRange { radius });
        }
        t.words[0] = number as u64;
        if len > 64 {
            t.words[1] = (number >> 64) as u64;
        }
        Ok(t)
    }

    /// The Wolfram number of this table, if it fits in 128 bits (always true for r <= 3).
    pub fn encode(&self) -> Result<u128> {
        if self.words.iter().skip(2).any(|&w| w != 0) {
            return Err(Error::RuleOutOfRange { radius: self.radius });
        }
        let lo = self.words[0] as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        Ok(lo | hi << 64)
    }

    pub fn from_bits(radius: u32, bits: &[bool]) -> Result<Self> {
        let mut t = Self::zeros(radius)?;
        if bits.len() != t.len() {
            return Err(Error::invalid(format!(
                "rule table for radius {radius} needs {} bits, got {}",
                t.len(),
                bits.len()
            )));
        }
        for (p, &b) in bits.iter().enumerate() {
            t.set(p, b);
        }
        Ok(t)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len()).map(|p| self.get(p)).collect()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Cells in one neighborhood, `2r + 1`.
    pub fn span(&self) -> usize {
        2 * self.radius as usize + 1
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        table_len(self.radius)
    }

    #[inline]
    pub fn get(&self, pattern: usize) -> bool {
        (self.words[pattern / 64] >> (pattern % 64)) & 1 == 1
    }

    pub fn set(&mut self, pattern: usize, value: bool) {
        let mask = 1u64 << (pattern % 64);
        if value {
            self.words[pattern / 64] |= mask;
        } else {
            self.words[pattern / 64] &= !mask;
        }
    }

    /// Output for an explicit neighborhood, leftmost cell first.
    pub fn apply(&self, neighborhood: &[bool]) -> bool {
        debug_assert_eq!(neighborhood.len(), self.span());
        let p = neighborhood.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        self.get(p)
    }

    /// Output on the all-zeros neighborhood; `false` means an all-zero lattice is a fixed point.
    pub fn quiescent_zero(&self) -> bool {
        self.get(0)
    }

    /// Output on the all-ones neighborhood; `true` means an all-one lattice is a fixed point.
    pub fn quiescent_one(&self) -> bool {
        self.get(self.len() - 1)
    }

    /// Lowercase hex of the Wolfram number, zero-padded to `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|&k| 4 * d + k < self.len() && self.get(4 * d + k))
                    .fold(0u32, |acc, k| acc | 1 << k);
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(radius: u32, hex: &str) -> Result<Self> {
        let mut t = Self::zeros(radius)?;
        let digits = t.len().div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "radius {radius} rule needs {digits} hex digits, got {}",
                hex.len()
            )));
        }
        for (i, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            let d = digits - 1 - i;
            for k in 0..4 {
                if nibble >> k & 1 == 1 {
                    if 4 * d + k >= t.len() {
                        return Err(Error::RuleOutOfRange { radius });
                    }
                    t.set(4 * d + k, true);
                }
            }
        }
        Ok(t)
    }
}

impl fmt::Display for RuleTable {
    /// `r<radius>:<hex>`, e.g. `r1:fa` for rule 250.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}:{}", self.radius, self.to_hex())
    }
}

impl fmt::Debug for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleTable({self})")
    }
}

impl FromStr for RuleTable {
    type Err = Error;

    /// Accepts `r<radius>:<hex>`, or a plain decimal number for radius 1.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('r') {
            let (radius, hex) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected r<radius>:<hex>, got {s:?}")))?;
            let radius: u32 = radius
                .parse()
                .map_err(|_| Error::Parse(format!("invalid radius in {s:?}")))?;
            return Self::from_hex(radius, &hex.to_ascii_lowercase());
        }
        let number: u16 = s
            .parse()
            .map_err(|_| Error::Parse(format!("expected decimal rule 0..=255 or r<radius>:<hex>, got {s:?}")))?;
        if number > 255 {
            return Err(Error::RuleOutOfRange { radius: 1 });
        }
        Self::decode(number as u128, 1)
    }
}

impl Serialize for RuleTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RuleTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_250_entries() {
        let t = RuleTable::decode(250, 1).unwrap();
        let expect = [
            ([1, 1, 1], true),
            ([1, 1, 0], true),
            ([1, 0, 1], true),
            ([1, 0, 0], true),
            ([0, 1, 1], true),
            ([0, 1, 0], false),
            ([0, 0, 1], true),
            ([0, 0, 0], false),
        ];
        for (nbh, out) in expect {
            let cells: Vec<bool> = nbh.iter().map(|&c| c == 1).collect();
            assert_eq!(t.apply(&cells), out, "sigma{nbh:?}");
        }
        assert_eq!(t.encode().unwrap(), 250);
        assert_eq!(t.to_string(), "r1:fa");
    }

    #[test]
    fn zero_and_saturated() {
        let z = RuleTable::decode(0, 1).unwrap();
        assert!(z.to_bits().iter().all(|&b| !b));
        assert_eq!(z.encode().unwrap(), 0);

        let full = RuleTable::decode(u128::MAX, 3).unwrap();
        assert_eq!(full.len(), 128);
        assert!(full.to_bits().iter().all(|&b| b));
        assert_eq!(full, RuleTable::ones(3).unwrap());
        assert_eq!(full.to_hex(), "f".repeat(32));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(RuleTable::decode(256, 1), Err(Error::RuleOutOfRange { radius: 1 })));
        assert!(RuleTable::decode(1 << 32, 2).is_err());
        assert!(RuleTable::decode(0, 0).is_err());
        assert!(RuleTable::decode(0, 8).is_err());
        assert!(RuleTable::decode(u128::MAX, 7).is_ok());
        let mut wide = RuleTable::zeros(4).unwrap();
        wide.set(300, true);
        assert!(wide.encode().is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("250".parse::<RuleTable>().unwrap(), RuleTable::decode(250, 1).unwrap());
        assert_eq!("r1:FA".parse::<RuleTable>().unwrap().encode().unwrap(), 250);
        assert!("256".parse::<RuleTable>().is_err());
        assert!("r1:fff".parse::<RuleTable>().is_err());
        assert!("r1:zz".parse::<RuleTable>().is_err());
        assert!("r3".parse::<RuleTable>().is_err());
        let r3: RuleTable = format!("r3:{}", "0".repeat(31) + "1").parse().unwrap();
        assert_eq!(r3.encode().unwrap(), 1);
    }

    #[test]
    fn identity_copies_center() {
        let id = RuleTable::identity(1).unwrap();
        assert_eq!(id.encode().unwrap(), 0b1100_1100);
    }
}
