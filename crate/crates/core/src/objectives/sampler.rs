use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ca::Configuration;
use crate::error::{Error, Result};
use crate::seed::{rng_from, SimRng};

/// Draws a configuration whose number of ones is uniform on `0..=n`,
/// with the ones placed uniformly without replacement.
pub fn sample_flat_ic(n: usize, rng: &mut SimRng) -> Configuration {
    assert!(n >= 1, "lattice width must be positive");
    let k = rng.random_range(0..=n);
    sample_with_ones(n, k, rng)
}

/// Draws a configuration with exactly `ones` ones at uniformly chosen cells.
pub fn sample_with_ones(n: usize, ones: usize, rng: &mut SimRng) -> Configuration {
    assert!(ones <= n, "cannot place {ones} ones in {n} cells");
    let mut c = Configuration::zeros(n);
    for i in index::sample(rng, n, ones) {
        c.set(i, true);
    }
    c
}

/// A sample of initial configurations with their cached densities.
#[derive(Clone, Debug, PartialEq)]
pub struct IcBatch {
    width: usize,
    seed: u64,
    ics: Vec<Configuration>,
    densities: Vec<f64>,
}

impl IcBatch {
    /// `size` flat-distributed configurations drawn from a stream seeded with `seed`.
    pub fn sample_flat(width: usize, size: usize, seed: u64) -> Result<Self> {
        if width == 0 {
            return Err(Error::invalid("lattice width must be positive"));
        }
        let mut rng = rng_from(seed, 0);
        let ics = (0..size).map(|_| sample_flat_ic(width, &mut rng)).collect();
        Self::from_ics(width, seed, ics)
    }

    pub fn from_ics(width: usize, seed: u64, ics: Vec<Configuration>) -> Result<Self> {
        if let Some(bad) = ics.iter().find(|c| c.width() != width) {
            return Err(Error::WidthMismatch { expected: width, actual: bad.width() });
        }
        let densities = ics.iter().map(Configuration::density).collect();
        Ok(Self { width, seed, ics, densities })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.ics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ics.is_empty()
    }

    pub fn ics(&self) -> &[Configuration] {
        &self.ics
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&BatchFile::from(self)).expect("batch serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: BatchFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("IC batch: {e}")))?;
        let ics = file
            .ics
            .iter()
            .map(|h| Configuration::from_hex(file.n, h))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ics(file.n, file.seed, ics)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchFile {
    seed: u64,
    n: usize,
    ics: Vec<String>,
}

impl From<&IcBatch> for BatchFile {
    fn from(b: &IcBatch) -> Self {
        Self { seed: b.seed, n: b.width, ics: b.ics.iter().map(Configuration::to_hex).collect() }
    }
}
