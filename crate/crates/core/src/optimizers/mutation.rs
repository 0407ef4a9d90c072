use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;

use crate::error::{Error, Result};
use crate::seed::SimRng;

/// Distribution over the number of bits flipped by one mutation.
#[derive(Clone, Debug, PartialEq)]
pub struct MutationPmf {
    probs: Vec<f64>,
    dist: Option<WeightedIndex<f64>>,
}

impl MutationPmf {
    /// `probs[k]` is the probability of flipping exactly `k` bits.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() || probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::invalid("mutation pmf needs finite non-negative entries"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!("mutation pmf sums to {total}, not 1")));
        }
        let dist = (probs.len() > 1).then(|| WeightedIndex::new(&probs).expect("validated weights"));
        Ok(Self { probs, dist })
    }

    /// All mass on flipping `k` bits.
    pub fn exactly(k: usize) -> Self {
        let mut probs = vec![0.0; k + 1];
        probs[k] = 1.0;
        Self::new(probs).expect("point mass is a valid pmf")
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Largest flip count with non-zero probability.
    pub fn max_flips(&self) -> usize {
        self.probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(k, p)| k as f64 * p).sum()
    }

    pub fn sample(&self, rng: &mut SimRng) -> usize {
        match &self.dist {
            Some(d) => d.sample(rng),
            None => 0,
        }
    }
}

impl Default for MutationPmf {
    /// Right-tailed: usually nothing, occasionally a handful of flips.
    fn default() -> Self {
        Self::new(vec![0.5, 0.25, 0.15, 0.07, 0.03]).expect("default pmf is valid")
    }
}

/// Flips a pmf-drawn number of distinct, uniformly chosen bits. Returns the flip count.
pub fn mutate_particle(position: &mut [bool], pmf: &MutationPmf, rng: &mut SimRng) -> Result<usize> {
    if pmf.max_flips() > position.len() {
        return Err(Error::invalid(format!(
            "mutation may flip {} bits of a {}-bit string",
            pmf.max_flips(),
            position.len()
        )));
    }
    let k = pmf.sample(rng);
    for j in index::sample(rng, position.len(), k) {
        position[j] = !position[j];
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from;

    #[test]
    fn default_mean_flips() {
        assert!((MutationPmf::default().mean() - 0.88).abs() < 1e-12);
        assert_eq!(MutationPmf::default().max_flips(), 4);
    }

    #[test]
    fn zero_mass_leaves_position() {
        let mut rng = rng_from(0, 0);
        let mut x = vec![true, false, true];
        assert_eq!(mutate_particle(&mut x, &MutationPmf::exactly(0), &mut rng).unwrap(), 0);
        assert_eq!(x, vec![true, false, true]);
    }

    #[test]
    fn full_flip_complements() {
        let mut rng = rng_from(0, 0);
        let mut x = vec![true, false, true, true];
        mutate_particle(&mut x, &MutationPmf::exactly(4), &mut rng).unwrap();
        assert_eq!(x, vec![false, true, false, false]);
    }

    #[test]
    fn too_many_flips() {
        let mut rng = rng_from(0, 0);
        let mut x = vec![false; 3];
        assert!(mutate_particle(&mut x, &MutationPmf::default(), &mut rng).is_err());
    }

    #[test]
    fn rejects_bad_pmf() {
        assert!(MutationPmf::new(vec![]).is_err());
        assert!(MutationPmf::new(vec![0.5, 0.6]).is_err());
        assert!(MutationPmf::new(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn empirical_frequencies() {
        let pmf = MutationPmf::default();
        let mut rng = rng_from(9, 0);
        let mut hist = [0usize; 5];
        let n = 100_000;
        for _ in 0..n {
            hist[pmf.sample(&mut rng)] += 1;
        }
        for (h, p) in hist.iter().zip(pmf.probabilities()) {
            assert!((*h as f64 / n as f64 - p).abs() < 0.01);
        }
    }
}
