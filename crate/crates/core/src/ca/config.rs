use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One lattice row of `width` binary cells, packed 64 per word (cell `i` is bit `i % 64` of word `i / 64`).
///
/// Bits past `width` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    width: usize,
    words: Vec<u64>,
}

pub(crate) fn words_for(width: usize) -> usize {
    width.div_ceil(64)
}

pub(crate) fn tail_mask(width: usize) -> u64 {
    match width % 64 {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

impl Configuration {
    pub fn zeros(width: usize) -> Self {
        assert!(width > 0, "lattice width must be positive");
        Self { width, words: vec![0; words_for(width)] }
    }

    pub fn ones(width: usize) -> Self {
        let mut c = Self::zeros(width);
        c.words.iter_mut().for_each(|w| *w = !0);
        c.clear_tail();
        c
    }

    /// A single 1 at index `at`, zeros elsewhere.
    pub fn single_one(width: usize, at: usize) -> Result<Self> {
        if at >= width {
            return Err(Error::invalid(format!("position {at} outside lattice of width {width}")));
        }
        let mut c = Self::zeros(width);
        c.set(at, true);
        Ok(c)
    }

    /// The elementary configuration with its 1 at `width / 2`.
    pub fn single_one_centered(width: usize) -> Self {
        Self::single_one(width, width / 2).expect("center lies inside the lattice")
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut c = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            c.set(i, b);
        }
        c
    }

    pub(crate) fn from_words(width: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(width));
        let mut c = Self { width, words };
        c.clear_tail();
        c
    }

    fn clear_tail(&mut self) {
        let mask = tail_mask(self.width);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width, "cell {i} outside lattice of width {}", self.width);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.width).map(|i| self.get(i)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Fraction of cells that are 1.
    pub fn density(&self) -> f64 {
        self.count_ones() as f64 / self.width as f64
    }

    /// `Some(true)` if every cell is 1, `Some(false)` if every cell is 0, `None` otherwise.
    pub fn uniform_state(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            n if n == self.width => Some(true),
            _ => None,
        }
    }

    /// Cyclic shift: cell `i` of the result is cell `(i + k) mod width` of `self`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let n = self.width;
        let mut out = Self::zeros(n);
        for i in 0..n {
            if self.get((i + k) % n) {
                out.set(i, true);
            }
        }
        out
    }

    /// Cells as ASCII `'0'`/`'1'`, cell 0 first.
    pub fn to_ascii(&self) -> Vec<u8> {
        (0..self.width).map(|i| if self.get(i) { b'1' } else { b'0' }).collect()
    }

    /// Hex in reading order: cell 0 is the most significant bit of the
    /// `width`-bit number, left-padded with zero bits to whole digits.
    pub fn to_hex(&self) -> String {
        let digits = self.width.div_ceil(4);
        let pad = digits * 4 - self.width;
        (0..digits)
            .map(|d| {
                let nibble = (0..4).fold(0u32, |acc, k| {
                    let pos = 4 * d + k;
                    let bit = pos >= pad && self.get(pos - pad);
                    acc << 1 | bit as u32
                });
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(width: usize, hex: &str) -> Result<Self> {
        if width == 0 {
            return Err(Error::invalid("lattice width must be positive"));
        }
        let digits = width.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "width-{width} configuration needs {digits} hex digits, got {}",
                hex.len()
            )));
        }
        let pad = digits * 4 - width;
        let mut c = Self::zeros(width);
        for (d, ch) in hex.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?;
            for k in 0..4 {
                if nibble >> (3 - k) & 1 == 1 {
                    let pos = 4 * d + k;
                    if pos < pad {
                        return Err(Error::Parse(format!("hex {hex:?} exceeds width {width}")));
                    }
                    c.set(pos - pad, true);
                }
            }
        }
        Ok(c)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.to_ascii()).unwrap())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

impl FromStr for Configuration {
    type Err = Error;

    /// Parses a string of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty configuration".into()));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid cell {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_state_cases() {
        assert_eq!("11111".parse::<Configuration>().unwrap().uniform_state(), Some(true));
        assert_eq!("00000".parse::<Configuration>().unwrap().uniform_state(), Some(false));
        assert_eq!("01011".parse::<Configuration>().unwrap().uniform_state(), None);
        assert_eq!(Configuration::ones(130).uniform_state(), Some(true));
        assert_eq!(Configuration::ones(130).count_ones(), 130);
    }

    #[test]
    fn hex_reading_order() {
        let c: Configuration = "10110".parse().unwrap();
        // 000 10110 -> 0x16
        assert_eq!(c.to_hex(), "16");
        assert_eq!(Configuration::from_hex(5, "16").unwrap(), c);
        assert!(Configuration::from_hex(5, "36").is_err());
        assert!(Configuration::from_hex(5, "1").is_err());
    }

    #[test]
    fn rotation() {
        let c: Configuration = "10010".parse().unwrap();
        assert_eq!(c.rotate_left(1).to_string(), "00101");
        assert_eq!(c.rotate_left(5), c);
    }

    #[test]
    fn single_one_placement() {
        assert_eq!(Configuration::single_one_centered(7).to_string(), "0001000");
        assert_eq!(Configuration::single_one(7, 0).unwrap().to_string(), "1000000");
        assert!(Configuration::single_one(7, 7).is_err());
    }
}
