use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance between swarm indices used to build neighborhoods.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Circular distance on `Z/S`.
    #[default]
    Ring,
    /// Plain `|i - j|`, clipped at the swarm ends.
    Linear,
}

/// Indices within distance `delta` of `i`, in ascending order, including `i`.
pub fn neighborhood(i: usize, delta: usize, size: usize, topology: Topology) -> Result<Vec<usize>> {
    if i >= size {
        return Err(Error::invalid(format!("particle {i} outside swarm of {size}")));
    }
    if 2 * delta + 1 > size {
        return Err(Error::invalid(format!(
            "neighborhood radius {delta} too large for swarm of {size}"
        )));
    }
    Ok(match topology {
        Topology::Ring => {
            let mut v: Vec<usize> = (0..=2 * delta).map(|k| (i + size + k - delta) % size).collect();
            v.sort_unstable();
            v
        }
        Topology::Linear => (i.saturating_sub(delta)..=(i + delta).min(size - 1)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_at_zero() {
        let n = neighborhood(0, 5, 100, Topology::Ring).unwrap();
        let expect: Vec<usize> = (0..=5).chain(95..100).collect();
        assert_eq!(n, expect);
        assert_eq!(n.len(), 11);
    }

    #[test]
    fn singleton() {
        assert_eq!(neighborhood(50, 0, 100, Topology::Ring).unwrap(), vec![50]);
    }

    #[test]
    fn each_index_in_2d_plus_1_neighborhoods() {
        let (delta, size) = (3, 17);
        let mut counts = vec![0; size];
        for i in 0..size {
            for j in neighborhood(i, delta, size, Topology::Ring).unwrap() {
                counts[j] += 1;
            }
        }
        assert!(counts.iter().all(|&c| c == 2 * delta + 1));
    }

    #[test]
    fn linear_clips() {
        assert_eq!(neighborhood(1, 2, 10, Topology::Linear).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(neighborhood(9, 2, 10, Topology::Linear).unwrap(), vec![7, 8, 9]);
    }

    #[test]
    fn too_large() {
        assert!(neighborhood(0, 50, 100, Topology::Ring).is_err());
        assert!(neighborhood(0, 10, 21, Topology::Ring).is_ok());
        assert!(neighborhood(21, 1, 21, Topology::Ring).is_err());
    }
}
