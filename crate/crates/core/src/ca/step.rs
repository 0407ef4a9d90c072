//! Word-parallel lattice update.
//!
//! Each 64-cell output word is computed at once: the `2r + 1` neighbor
//! offsets are gathered as shifted words from a ring-extended copy of the
//! row, then the rule table is evaluated as a multiplexer tree over those
//! words, selecting on the rightmost neighbor first.

use super::config::{words_for, Configuration};
use super::rule::RuleTable;
use crate::error::{Error, Result};

/// A rule prepared for repeated stepping on lattices of one width.
#[derive(Clone, Debug)]
pub struct Stepper {
    radius: usize,
    width: usize,
    /// `pairs[i] = bits[2i] | bits[2i + 1] << 1`.
    pairs: Vec<u8>,
    ext: Vec<u64>,
    nodes: Vec<u64>,
    vars: Vec<u64>,
    zero_fixed: bool,
    one_fixed: bool,
}

#[inline]
fn extract64(words: &[u64], pos: usize) -> u64 {
    let k = pos / 64;
    let s = pos % 64;
    let lo = words.get(k).copied().unwrap_or(0) >> s;
    if s == 0 {
        lo
    } else {
        lo | words.get(k + 1).copied().unwrap_or(0) << (64 - s)
    }
}

/// ORs `count` bits of `src` starting at `src_pos` into zero-initialized `dst` at `dst_pos`.
fn copy_bits(dst: &mut [u64], dst_pos: usize, src: &[u64], src_pos: usize, count: usize) {
    let mut done = 0;
    while done < count {
        let k = (count - done).min(64);
        let mut chunk = extract64(src, src_pos + done);
        if k < 64 {
            chunk &= (1u64 << k) - 1;
        }
        let at = dst_pos + done;
        let (w, s) = (at / 64, at % 64);
        dst[w] |= chunk << s;
        if s != 0 && s + k > 64 {
            dst[w + 1] |= chunk >> (64 - s);
        }
        done += k;
    }
}

impl Stepper {
    pub fn new(rule: &RuleTable, width: usize) -> Result<Self> {
        let radius = rule.radius() as usize;
        let span = rule.span();
        if width < span {
            return Err(Error::LatticeTooSmall { width, span });
        }
        let half = rule.len() / 2;
        let pairs = (0..half)
            .map(|i| rule.get(2 * i) as u8 | (rule.get(2 * i + 1) as u8) << 1)
            .collect();
        Ok(Self {
            radius,
            width,
            pairs,
            ext: vec![0; (width + 2 * radius).div_ceil(64) + 1],
            nodes: vec![0; half],
            vars: vec![0; span],
            zero_fixed: !rule.quiescent_zero(),
            one_fixed: rule.quiescent_one(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// True when a uniform row with this value maps to itself.
    pub fn fixes_uniform(&self, value: bool) -> bool {
        if value {
            self.one_fixed
        } else {
            self.zero_fixed
        }
    }

    /// Writes one synchronous update of `src` into `dst` (both `words_for(width)` long).
    pub(crate) fn step_words(&mut self, src: &[u64], dst: &mut [u64]) {
        let n = self.width;
        let r = self.radius;
        let span = 2 * r + 1;
        debug_assert_eq!(src.len(), words_for(n));
        debug_assert_eq!(dst.len(), words_for(n));

        // ext = src[n-r..n] ++ src[0..n] ++ src[0..r], so cell n + d sits at ext bit n + r + d.
        self.ext.iter_mut().for_each(|w| *w = 0);
        copy_bits(&mut self.ext, 0, src, n - r, r);
        copy_bits(&mut self.ext, r, src, 0, n);
        copy_bits(&mut self.ext, r + n, src, 0, r);

        let half = self.pairs.len();
        for (w, out) in dst.iter_mut().enumerate() {
            let base = 64 * w;
            for (k, v) in self.vars.iter_mut().enumerate() {
                *v = extract64(&self.ext, base + k);
            }
            let x = self.vars[span - 1];
            for (node, &pair) in self.nodes.iter_mut().zip(&self.pairs) {
                *node = match pair {
                    0 => 0,
                    1 => !x,
                    2 => x,
                    _ => !0,
                };
            }
            let mut len = half;
            for k in (0..span - 1).rev() {
                let x = self.vars[k];
                len /= 2;
                for i in 0..len {
                    let a = self.nodes[2 * i];
                    let b = self.nodes[2 * i + 1];
                    self.nodes[i] = a ^ ((a ^ b) & x);
                }
            }
            *out = self.nodes[0];
        }
        if let Some(last) = dst.last_mut() {
            *last &= super::config::tail_mask(n);
        }
    }

    pub fn step(&mut self, config: &Configuration) -> Result<Configuration> {
        if config.width() != self.width {
            return Err(Error::WidthMismatch { expected: self.width, actual: config.width() });
        }
        let mut out = vec![0; words_for(self.width)];
        self.step_words(config.words(), &mut out);
        Ok(Configuration::from_words(self.width, out))
    }

    /// Runs `steps` updates and returns only the final row.
    ///
    /// Stops early once a row maps to itself, since every later row is then identical.
    pub fn run_final(&mut self, ic: &Configuration, steps: usize) -> Result<Configuration> {
        if ic.width() != self.width {
            return Err(Error::WidthMismatch { expected: self.width, actual: ic.width() });
        }
        let mut cur = ic.words().to_vec();
        let mut next = vec![0; cur.len()];
        for _ in 0..steps {
            self.step_words(&cur, &mut next);
            if next == cur {
                break;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(Configuration::from_words(self.width, cur))
    }
}

/// One synchronous update of `config` under `rule` with periodic boundaries.
pub fn step(config: &Configuration, rule: &RuleTable) -> Result<Configuration> {
    Stepper::new(rule, config.width())?.step(config)
}
