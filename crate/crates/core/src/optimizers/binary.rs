//! Binary PSO with separate toward-1 / toward-0 velocities, and the
//! global-local variant that adds a ring-neighborhood attractor and a
//! mutation step.

use std::ops::ControlFlow;

use rand::Rng;

use super::inertia::ChaoticInertia;
use super::mutation::{mutate_particle, MutationPmf};
use super::topology::neighborhood;
use super::{evaluate_all, random_bits, EpochReport, Objective, OptimizerConfig, RunOutcome};
use crate::error::{Error, Result};
use crate::seed::{rng_from, SimRng};

#[derive(Clone, Debug, PartialEq)]
pub struct Particle {
    pub index: usize,
    pub position: Vec<bool>,
    /// Velocity toward 1, consulted when the bit is currently 0.
    pub v1: Vec<f64>,
    /// Velocity toward 0, consulted when the bit is currently 1.
    pub v0: Vec<f64>,
    pub pbest: Vec<bool>,
    pub pbest_fitness: f64,
    /// Best neighborhood position seen so far (global-local variant only).
    pub plocal: Vec<bool>,
    pub plocal_fitness: f64,
}

impl Particle {
    /// Random position, velocities uniform on `[0, 1)`, bests unset.
    pub fn random(index: usize, len: usize, rng: &mut SimRng) -> Self {
        let position = random_bits(len, rng);
        let v1 = (0..len).map(|_| rng.random::<f64>()).collect();
        let v0 = (0..len).map(|_| rng.random::<f64>()).collect();
        Self {
            index,
            pbest: position.clone(),
            plocal: position.clone(),
            position,
            v1,
            v0,
            pbest_fitness: f64::NEG_INFINITY,
            plocal_fitness: f64::NEG_INFINITY,
        }
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }
}

/// `(d1, d0)` contribution of one attractor bit with coefficient `c` and draw `r`.
#[inline]
fn attraction(bit: bool, c: f64, r: f64) -> (f64, f64) {
    if bit {
        (c * r, -c * r)
    } else {
        (-c * r, c * r)
    }
}

/// New `(v1, v0)` for one bit under the binary PSO update, clamped to `[-vmax, vmax]`.
#[allow(clippy::too_many_arguments)]
pub fn bit_velocity(
    v: (f64, f64),
    w: f64,
    pbest: bool,
    gbest: bool,
    r1: f64,
    r2: f64,
    c1: f64,
    c2: f64,
    vmax: f64,
) -> (f64, f64) {
    let (d11, d10) = attraction(pbest, c1, r1);
    let (d21, d20) = attraction(gbest, c2, r2);
    (
        (w * v.0 + d11 + d21).clamp(-vmax, vmax),
        (w * v.1 + d10 + d20).clamp(-vmax, vmax),
    )
}

/// New `(v1, v0)` for one bit under the global-local update: the global and
/// local social terms are averaged, both scaled by `c2`.
#[allow(clippy::too_many_arguments)]
pub fn bit_velocity_global_local(
    v: (f64, f64),
    w: f64,
    pbest: bool,
    gbest: bool,
    plocal: bool,
    (r1, r2, r3): (f64, f64, f64),
    c1: f64,
    c2: f64,
    vmax: f64,
) -> (f64, f64) {
    let (d11, d10) = attraction(pbest, c1, r1);
    let (d21, d20) = attraction(gbest, c2, r2);
    let (d31, d30) = attraction(plocal, c2, r3);
    (
        (w * v.0 + d11 + (d21 + d31) / 2.0).clamp(-vmax, vmax),
        (w * v.1 + d10 + (d20 + d30) / 2.0).clamp(-vmax, vmax),
    )
}

/// Updates both velocity tracks of `p`, drawing `r1, r2` per bit.
#[allow(clippy::needless_range_loop)]
pub fn bpso_velocity_update(p: &mut Particle, gbest: &[bool], w: f64, cfg: &OptimizerConfig, rng: &mut SimRng) {
    assert_eq!(gbest.len(), p.len());
    for j in 0..p.len() {
        let r1: f64 = rng.random();
        let r2: f64 = rng.random();
        (p.v1[j], p.v0[j]) =
            bit_velocity((p.v1[j], p.v0[j]), w, p.pbest[j], gbest[j], r1, r2, cfg.c1, cfg.c2, cfg.vmax);
    }
}

/// Updates both velocity tracks of `p` toward its best, `gbest` and `plocal`, drawing `r1, r2, r3` per bit.
pub fn bgl_velocity_update(
    p: &mut Particle,
    gbest: &[bool],
    plocal: &[bool],
    w: f64,
    cfg: &OptimizerConfig,
    rng: &mut SimRng,
) {
    assert_eq!(gbest.len(), p.len());
    assert_eq!(plocal.len(), p.len());
    for j in 0..p.len() {
        let r: (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
        (p.v1[j], p.v0[j]) = bit_velocity_global_local(
            (p.v1[j], p.v0[j]),
            w,
            p.pbest[j],
            gbest[j],
            plocal[j],
            r,
            cfg.c1,
            cfg.c2,
            cfg.vmax,
        );
    }
}

/// Probability that a bit with change-velocity `vc` flips.
#[inline]
pub fn flip_probability(vc: f64) -> f64 {
    1.0 / (1.0 + (-vc).exp())
}

/// Flips each bit with probability `sigmoid(v1)` if it is 0, `sigmoid(v0)` if it is 1.
pub fn bpso_position_update(p: &mut Particle, rng: &mut SimRng) {
    for j in 0..p.len() {
        let vc = if p.position[j] { p.v0[j] } else { p.v1[j] };
        if rng.random::<f64>() < flip_probability(vc) {
            p.position[j] = !p.position[j];
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Binary,
    GlobalLocal,
}

/// Complete search state of a binary swarm.
#[derive(Clone, Debug)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    pub gbest: Vec<bool>,
    pub gbest_fitness: f64,
    pub epoch: usize,
    pub inertia: ChaoticInertia,
    variant: Variant,
    pmf: MutationPmf,
    neighborhoods: Vec<Vec<usize>>,
    rng: SimRng,
    particle_rngs: Vec<SimRng>,
}

impl SwarmState {
    pub fn new(len: usize, cfg: &OptimizerConfig, variant: Variant) -> Result<Self> {
        cfg.validate()?;
        if len == 0 {
            return Err(Error::invalid("bit strings must be non-empty"));
        }
        if cfg.population < 2 {
            return Err(Error::invalid("swarm needs at least two particles"));
        }
        let pmf = MutationPmf::new(cfg.mutation_pmf.clone())?;
        let neighborhoods = match variant {
            Variant::Binary => Vec::new(),
            Variant::GlobalLocal => {
                if pmf.max_flips() > len {
                    return Err(Error::invalid("mutation pmf exceeds bit-string length"));
                }
                (0..cfg.population)
                    .map(|i| neighborhood(i, cfg.neighborhood, cfg.population, cfg.topology))
                    .collect::<Result<_>>()?
            }
        };
        let mut rng = rng_from(cfg.seed, 0);
        let mut particle_rngs: Vec<SimRng> =
            (0..cfg.population).map(|i| rng_from(cfg.seed, i as u64 + 1)).collect();
        let particles = particle_rngs
            .iter_mut()
            .enumerate()
            .map(|(i, r)| Particle::random(i, len, r))
            .collect();
        let inertia = ChaoticInertia::new(cfg.w1, cfg.w2, cfg.inertia_mode, &mut rng);
        Ok(Self {
            particles,
            gbest: vec![false; len],
            gbest_fitness: f64::NEG_INFINITY,
            epoch: 0,
            inertia,
            variant,
            pmf,
            neighborhoods,
            rng,
            particle_rngs,
        })
    }

    /// Records the epoch's evaluations into the personal, global and local bests.
    pub fn absorb(&mut self, fitness: &[f64]) {
        for (p, &f) in self.particles.iter_mut().zip(fitness) {
            if f > p.pbest_fitness {
                p.pbest_fitness = f;
                p.pbest.clone_from(&p.position);
            }
            if f > self.gbest_fitness {
                self.gbest_fitness = f;
                self.gbest.clone_from(&p.position);
            }
        }
        if self.variant == Variant::GlobalLocal {
            for i in 0..self.particles.len() {
                let mut best: Option<usize> = None;
                for &j in &self.neighborhoods[i] {
                    if best.is_none_or(|b| fitness[j] > fitness[b]) {
                        best = Some(j);
                    }
                }
                let j = best.expect("neighborhoods are non-empty");
                if fitness[j] > self.particles[i].plocal_fitness {
                    let pos = self.particles[j].position.clone();
                    let p = &mut self.particles[i];
                    p.plocal_fitness = fitness[j];
                    p.plocal = pos;
                }
            }
        }
    }

    /// Velocity, position and (global-local only) mutation updates for every particle.
    pub fn advance(&mut self, max_iter: usize, cfg: &OptimizerConfig) -> Result<f64> {
        let w = self.inertia.next(self.epoch, max_iter, &mut self.rng);
        for (p, rng) in self.particles.iter_mut().zip(&mut self.particle_rngs) {
            match self.variant {
                Variant::Binary => bpso_velocity_update(p, &self.gbest, w, cfg, rng),
                Variant::GlobalLocal => {
                    let plocal = std::mem::take(&mut p.plocal);
                    bgl_velocity_update(p, &self.gbest, &plocal, w, cfg, rng);
                    p.plocal = plocal;
                }
            }
            bpso_position_update(p, rng);
            if self.variant == Variant::GlobalLocal {
                mutate_particle(&mut p.position, &self.pmf, rng)?;
            }
        }
        self.epoch += 1;
        Ok(w)
    }

    pub fn positions(&self) -> Vec<Vec<bool>> {
        self.particles.iter().map(|p| p.position.clone()).collect()
    }
}

fn run_swarm<O: Objective>(
    objective: &mut O,
    len: usize,
    cfg: &OptimizerConfig,
    variant: Variant,
    monitor: &mut dyn FnMut(&EpochReport) -> ControlFlow<()>,
) -> Result<RunOutcome> {
    let mut swarm = SwarmState::new(len, cfg, variant)?;
    let mut trajectory = Vec::with_capacity(cfg.epochs);
    let mut inertia = Vec::with_capacity(cfg.epochs);
    let mut completed = true;
    for epoch in 0..cfg.epochs {
        objective.begin_epoch(epoch)?;
        let fitness = evaluate_all(objective, &swarm.positions(), cfg.parallel)?;
        swarm.absorb(&fitness);
        trajectory.push(swarm.gbest_fitness);
        let w = if epoch + 1 < cfg.epochs { Some(swarm.advance(cfg.epochs, cfg)?) } else { None };
        inertia.extend(w);
        let report = EpochReport { epoch, best_fitness: swarm.gbest_fitness, inertia: w };
        if monitor(&report).is_break() {
            completed = epoch + 1 == cfg.epochs;
            break;
        }
    }
    Ok(RunOutcome {
        best: swarm.gbest,
        best_fitness: swarm.gbest_fitness,
        trajectory,
        inertia,
        completed,
    })
}

/// Binary PSO: evaluate, update personal and global bests, then move every particle.
pub fn binary_pso<O: Objective>(
    objective: &mut O,
    len: usize,
    cfg: &OptimizerConfig,
    monitor: &mut dyn FnMut(&EpochReport) -> ControlFlow<()>,
) -> Result<RunOutcome> {
    run_swarm(objective, len, cfg, Variant::Binary, monitor)
}

/// Binary global-local PSO: binary PSO plus a persistent best-of-neighborhood
/// attractor per particle and a pmf-driven mutation after each move.
pub fn bgl_pso<O: Objective>(
    objective: &mut O,
    len: usize,
    cfg: &OptimizerConfig,
    monitor: &mut dyn FnMut(&EpochReport) -> ControlFlow<()>,
) -> Result<RunOutcome> {
    run_swarm(objective, len, cfg, Variant::GlobalLocal, monitor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizers::{no_monitor, onemax, FnObjective};

    const VMAX: f64 = 6.0;

    #[test]
    fn both_bests_one() {
        let (r1, r2) = (0.3, 0.7);
        let (v1, v0) = bit_velocity((0.0, 0.0), 1.0, true, true, r1, r2, 2.0, 2.0, VMAX);
        assert!((v1 - (2.0 * r1 + 2.0 * r2)).abs() < 1e-12);
        assert!((v0 + (2.0 * r1 + 2.0 * r2)).abs() < 1e-12);
    }

    #[test]
    fn both_bests_zero_mirrors() {
        let (v1, v0) = bit_velocity((0.0, 0.0), 1.0, false, false, 0.3, 0.7, 2.0, 2.0, VMAX);
        assert!(v1 < 0.0 && v0 > 0.0);
        assert!((v1 + v0).abs() < 1e-12);
    }

    #[test]
    fn opposing_bests_cancel() {
        let (v1, v0) = bit_velocity((3.0, -2.0), 0.0, true, false, 0.5, 0.5, 2.0, 2.0, VMAX);
        assert_eq!((v1, v0), (0.0, 0.0));
    }

    #[test]
    fn clamped() {
        let (v1, v0) = bit_velocity((5.0, -5.0), 1.0, true, true, 1.0, 1.0, 2.0, 2.0, VMAX);
        assert_eq!((v1, v0), (VMAX, -VMAX));
    }

    #[test]
    fn global_local_social_average() {
        let (r2, r3) = (0.4, 0.9);
        let (v1, _) = bit_velocity_global_local((0.0, 0.0), 0.0, true, true, true, (0.0, r2, r3), 2.0, 2.0, VMAX);
        assert!((v1 - (2.0 * r2 + 2.0 * r3) / 2.0).abs() < 1e-12);
        // Opposing global and local bits with equal draws cancel.
        let (v1, v0) = bit_velocity_global_local((1.5, 0.5), 0.5, true, true, false, (0.25, 0.6, 0.6), 2.0, 2.0, VMAX);
        assert!((v1 - (0.75 + 0.5)).abs() < 1e-12);
        assert!((v0 - (0.25 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn global_local_reduces_when_local_is_global() {
        for &(pb, gb) in &[(true, true), (true, false), (false, true), (false, false)] {
            let a = bit_velocity((0.3, -0.2), 0.7, pb, gb, 0.1, 0.8, 2.0, 2.0, VMAX);
            let b = bit_velocity_global_local((0.3, -0.2), 0.7, pb, gb, gb, (0.1, 0.8, 0.8), 2.0, 2.0, VMAX);
            assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        }
    }

    #[test]
    fn sigmoid_values() {
        assert_eq!(flip_probability(0.0), 0.5);
        assert!((flip_probability(6.0) - 0.997_527_376).abs() < 1e-8);
        assert!((flip_probability(-6.0) - 0.002_472_623).abs() < 1e-8);
    }

    #[test]
    fn position_update_uses_matching_track() {
        let mut rng = rng_from(2, 0);
        let mut p = Particle::random(0, 64, &mut rng);
        p.position = vec![false; 64];
        p.v1 = vec![50.0; 64];
        p.v0 = vec![-50.0; 64];
        bpso_position_update(&mut p, &mut rng);
        assert!(p.position.iter().all(|&b| b));
        bpso_position_update(&mut p, &mut rng);
        assert!(p.position.iter().all(|&b| b));
    }

    #[test]
    fn single_bit_finds_one() {
        let cfg = OptimizerConfig { epochs: 10, population: 4, seed: 1, ..Default::default() };
        let mut obj = FnObjective(onemax);
        let out = binary_pso(&mut obj, 1, &cfg, &mut no_monitor).unwrap();
        assert_eq!(out.best, vec![true]);
    }

    #[test]
    fn bests_are_monotone_and_velocities_bounded() {
        let cfg = OptimizerConfig { population: 10, neighborhood: 2, seed: 3, ..Default::default() };
        let mut swarm = SwarmState::new(16, &cfg, Variant::GlobalLocal).unwrap();
        let mut rng = rng_from(77, 0);
        let mut last_p = vec![f64::NEG_INFINITY; 10];
        let mut last_g = f64::NEG_INFINITY;
        for _ in 0..30 {
            // Noisy objective: bests must still only increase.
            let fitness: Vec<f64> = swarm
                .positions()
                .iter()
                .map(|x| onemax(x).unwrap() + rng.random::<f64>() * 4.0)
                .collect();
            swarm.absorb(&fitness);
            assert!(swarm.gbest_fitness >= last_g);
            last_g = swarm.gbest_fitness;
            for (p, l) in swarm.particles.iter().zip(&mut last_p) {
                assert!(p.pbest_fitness >= *l);
                assert!(p.plocal_fitness >= p.pbest_fitness.min(p.plocal_fitness));
                *l = p.pbest_fitness;
            }
            let max_pbest = swarm.particles.iter().map(|p| p.pbest_fitness).fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(swarm.gbest_fitness, max_pbest);
            swarm.advance(30, &cfg).unwrap();
            for p in &swarm.particles {
                assert!(p.v1.iter().chain(&p.v0).all(|v| v.abs() <= cfg.vmax));
            }
        }
    }

    #[test]
    fn whole_swarm_local_best_tracks_global() {
        let cfg = OptimizerConfig { population: 9, neighborhood: 4, mutation_pmf: vec![1.0], seed: 5, ..Default::default() };
        let mut swarm = SwarmState::new(12, &cfg, Variant::GlobalLocal).unwrap();
        for _ in 0..20 {
            let fitness: Vec<f64> = swarm.positions().iter().map(|x| onemax(x).unwrap()).collect();
            swarm.absorb(&fitness);
            for p in &swarm.particles {
                assert_eq!(p.plocal, swarm.gbest);
                assert_eq!(p.plocal_fitness, swarm.gbest_fitness);
            }
            swarm.advance(20, &cfg).unwrap();
        }
    }

    #[test]
    fn rejects_degenerate_swarms() {
        let cfg = OptimizerConfig { population: 1, ..Default::default() };
        assert!(SwarmState::new(8, &cfg, Variant::Binary).is_err());
        let cfg = OptimizerConfig { population: 10, ..Default::default() };
        assert!(SwarmState::new(8, &cfg, Variant::GlobalLocal).is_err(), "neighborhood 5 too wide for 10");
        assert!(SwarmState::new(0, &OptimizerConfig::default(), Variant::Binary).is_err());
    }
}
