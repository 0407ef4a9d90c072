use rand::Rng;
use serde::{Deserialize, Serialize};

use super::inertia::{ChaoticInertia, InertiaMode};
use crate::error::{Error, Result};
use crate::seed::rng_from;

/// Settings for the real-valued PSO.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContinuousPsoConfig {
    pub swarm_size: usize,
    pub epochs: usize,
    pub c1: f64,
    pub c2: f64,
    pub w1: f64,
    pub w2: f64,
    pub inertia_mode: InertiaMode,
    /// Initial positions are uniform on `[lower, upper]` per component.
    pub lower: f64,
    pub upper: f64,
    /// Velocity clamp as a fraction of `upper - lower`.
    pub vmax_fraction: f64,
    pub seed: u64,
}

impl Default for ContinuousPsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 30,
            epochs: 1000,
            c1: 2.0,
            c2: 2.0,
            w1: 0.4,
            w2: 0.9,
            inertia_mode: InertiaMode::Logistic,
            lower: -5.0,
            upper: 5.0,
            vmax_fraction: 0.2,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousOutcome {
    pub best: Vec<f64>,
    pub best_fitness: f64,
    pub trajectory: Vec<f64>,
}

/// Real-valued PSO maximizing `objective` with chaotic inertia.
pub fn continuous_pso<F>(objective: F, dim: usize, cfg: &ContinuousPsoConfig) -> Result<ContinuousOutcome>
where
    F: Fn(&[f64]) -> f64,
{
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if cfg.swarm_size < 2 {
        return Err(Error::invalid("swarm needs at least two particles"));
    }
    if cfg.epochs == 0 {
        return Err(Error::invalid("epochs must be at least 1"));
    }
    if cfg.lower.is_nan() || cfg.upper.is_nan() || cfg.lower > cfg.upper {
        return Err(Error::invalid("lower bound exceeds upper bound"));
    }
    let mut rng = rng_from(cfg.seed, 0);
    let vmax = cfg.vmax_fraction * (cfg.upper - cfg.lower);
    let uniform = |lo: f64, hi: f64, rng: &mut crate::seed::SimRng| {
        if lo == hi {
            lo
        } else {
            rng.random_range(lo..=hi)
        }
    };
    let mut x: Vec<Vec<f64>> = (0..cfg.swarm_size)
        .map(|_| (0..dim).map(|_| uniform(cfg.lower, cfg.upper, &mut rng)).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..cfg.swarm_size)
        .map(|_| (0..dim).map(|_| uniform(-vmax, vmax, &mut rng)).collect())
        .collect();
    let mut pbest = x.clone();
    let mut pbest_fit = vec![f64::NEG_INFINITY; cfg.swarm_size];
    let mut gbest = x[0].clone();
    let mut gbest_fit = f64::NEG_INFINITY;
    let mut inertia = ChaoticInertia::new(cfg.w1, cfg.w2, cfg.inertia_mode, &mut rng);
    let mut trajectory = Vec::with_capacity(cfg.epochs);

    for epoch in 0..cfg.epochs {
        for i in 0..cfg.swarm_size {
            let f = objective(&x[i]);
            if !f.is_finite() {
                return Err(Error::NonFinite { value: f, position: x[i].clone() });
            }
            if f > pbest_fit[i] {
                pbest_fit[i] = f;
                pbest[i].clone_from(&x[i]);
            }
            if f > gbest_fit {
                gbest_fit = f;
                gbest.clone_from(&x[i]);
            }
        }
        trajectory.push(gbest_fit);
        if epoch + 1 == cfg.epochs {
            break;
        }
        let w = inertia.next(epoch, cfg.epochs, &mut rng);
        for i in 0..cfg.swarm_size {
            for j in 0..dim {
                let phi1: f64 = rng.random();
                let phi2: f64 = rng.random();
                let vel = w * v[i][j]
                    + cfg.c1 * phi1 * (pbest[i][j] - x[i][j])
                    + cfg.c2 * phi2 * (gbest[j] - x[i][j]);
                v[i][j] = vel.clamp(-vmax, vmax);
                x[i][j] += v[i][j];
            }
        }
    }
    Ok(ContinuousOutcome { best: gbest, best_fitness: gbest_fit, trajectory })
}
