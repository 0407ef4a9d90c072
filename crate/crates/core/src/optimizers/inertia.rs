use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::SimRng;

/// How the chaotic state advances between epochs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InertiaMode {
    /// Iterate the logistic map from one seed per run.
    #[default]
    Logistic,
    /// Draw a fresh `z0 ~ U(0,1)` each epoch and apply the map once.
    Redraw,
}

fn logistic(z: f64) -> f64 {
    // The open interval is absorbing except through z = 0.5 -> 1 -> 0.
    (4.0 * z * (1.0 - z)).clamp(f64::EPSILON, 1.0 - f64::EPSILON)
}

fn weight(t: usize, max_iter: usize, z: f64, w1: f64, w2: f64) -> f64 {
    (w1 - w2) * (max_iter - t) as f64 / max_iter as f64 + w2 * z
}

/// One chaotic inertia update with `w1 = 0.4`, `w2 = 0.9`.
///
/// Returns `(w, z')` where `z' = 4 z (1 - z)` and `w` is computed from `z'`.
pub fn chaotic_inertia(t: usize, max_iter: usize, z: f64) -> Result<(f64, f64)> {
    if max_iter == 0 {
        return Err(Error::invalid("max_iter must be positive"));
    }
    if t > max_iter {
        return Err(Error::invalid(format!("epoch {t} beyond max_iter {max_iter}")));
    }
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::invalid(format!("chaotic state {z} outside (0, 1)")));
    }
    let next = logistic(z);
    Ok((weight(t, max_iter, next, 0.4, 0.9), next))
}

/// Chaotic inertia weight schedule; `w` may be negative early in a run.
#[derive(Clone, Debug)]
pub struct ChaoticInertia {
    pub w1: f64,
    pub w2: f64,
    pub mode: InertiaMode,
    z: f64,
}

impl ChaoticInertia {
    /// Seeds the chaotic state away from the map's fixed and degenerate points.
    pub fn new(w1: f64, w2: f64, mode: InertiaMode, rng: &mut SimRng) -> Self {
        Self { w1, w2, mode, z: draw_state(rng) }
    }

    pub fn with_state(w1: f64, w2: f64, mode: InertiaMode, z: f64) -> Self {
        Self { w1, w2, mode, z }
    }

    pub fn state(&self) -> f64 {
        self.z
    }

    /// Advances the chaotic state and returns the weight for epoch `t`.
    pub fn next(&mut self, t: usize, max_iter: usize, rng: &mut SimRng) -> f64 {
        let base = match self.mode {
            InertiaMode::Logistic => self.z,
            InertiaMode::Redraw => draw_state(rng),
        };
        self.z = logistic(base);
        weight(t.min(max_iter), max_iter.max(1), self.z, self.w1, self.w2)
    }
}

fn draw_state(rng: &mut SimRng) -> f64 {
    loop {
        let z: f64 = rng.random();
        if z > 0.0 && ![0.25, 0.5, 0.75].contains(&z) {
            return z;
        }
    }
}
