use std::ops::ControlFlow;

use rand::seq::index;
use rand::Rng;

use super::{evaluate_all, random_bits, EpochReport, Objective, OptimizerConfig, RunOutcome};
use crate::error::{Error, Result};
use crate::seed::{rng_from, SimRng};

/// A generation of chromosomes, with fitness once evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct GaPopulation {
    pub chromosomes: Vec<Vec<bool>>,
    pub fitness: Option<Vec<f64>>,
    pub generation: usize,
}

impl GaPopulation {
    pub fn random(size: usize, len: usize, rngs: &mut [SimRng]) -> Self {
        assert_eq!(rngs.len(), size);
        let chromosomes = rngs.iter_mut().map(|r| random_bits(len, r)).collect();
        Self { chromosomes, fitness: None, generation: 0 }
    }

    pub fn len(&self) -> usize {
        self.chromosomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chromosomes.is_empty()
    }

    pub fn evaluate<O: Objective + ?Sized>(&mut self, objective: &O, parallel: bool) -> Result<&[f64]> {
        let f = evaluate_all(objective, &self.chromosomes, parallel)?;
        Ok(self.fitness.insert(f))
    }

    /// Indices sorted by fitness, best first; ties keep the lower index first.
    pub fn ranking(&self) -> Result<Vec<usize>> {
        let fitness = self.fitness.as_ref().ok_or_else(|| Error::invalid("population not evaluated"))?;
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| fitness[b].total_cmp(&fitness[a]));
        Ok(order)
    }
}

pub(crate) fn elite_count(size: usize, fraction: f64) -> Result<usize> {
    if size < 5 {
        return Err(Error::invalid(format!("population of {size} is too small (need at least 5)")));
    }
    let elites = (size as f64 * fraction).round() as usize;
    if elites == 0 || elites >= size {
        return Err(Error::invalid(format!("elite fraction {fraction} leaves no elites or no offspring")));
    }
    Ok(elites)
}

/// Breeds the next generation from an evaluated one.
///
/// The top elite fraction is copied unchanged; every other slot gets the
/// head of one elite and the tail of another (parents drawn uniformly with
/// replacement, cut uniform on `1..len`), then exactly `mutation_count`
/// distinct bits flipped. Slot `k` draws from `rngs[k]`.
pub fn ga_step(pop: &GaPopulation, cfg: &OptimizerConfig, rngs: &mut [SimRng]) -> Result<GaPopulation> {
    let size = pop.len();
    let elites = elite_count(size, cfg.elite_fraction)?;
    if rngs.len() != size {
        return Err(Error::invalid("one random stream per population slot required"));
    }
    let order = pop.ranking()?;
    let elite: Vec<&Vec<bool>> = order[..elites].iter().map(|&i| &pop.chromosomes[i]).collect();
    let len = pop.chromosomes[0].len();
    let flips = cfg.mutation_count.min(len);

    let mut next: Vec<Vec<bool>> = elite.iter().map(|c| (*c).clone()).collect();
    for rng in &mut rngs[elites..] {
        let a = elite[rng.random_range(0..elites)];
        let b = elite[rng.random_range(0..elites)];
        let mut child = if len > 1 {
            let cut = rng.random_range(1..len);
            a[..cut].iter().chain(&b[cut..]).copied().collect()
        } else {
            a.clone()
        };
        for j in index::sample(rng, len, flips) {
            child[j] = !child[j];
        }
        next.push(child);
    }
    Ok(GaPopulation { chromosomes: next, fitness: None, generation: pop.generation + 1 })
}

/// Generational GA with elitism. The objective's `begin_epoch` runs before
/// each generation is scored, so resampling objectives see fresh ICs per generation.
pub fn ga<O: Objective>(
    objective: &mut O,
    len: usize,
    cfg: &OptimizerConfig,
    monitor: &mut dyn FnMut(&EpochReport) -> ControlFlow<()>,
) -> Result<RunOutcome> {
    cfg.validate()?;
    if len == 0 {
        return Err(Error::invalid("bit strings must be non-empty"));
    }
    elite_count(cfg.population, cfg.elite_fraction)?;
    let mut rngs: Vec<SimRng> = (0..cfg.population).map(|i| rng_from(cfg.seed, i as u64 + 1)).collect();
    let mut pop = GaPopulation::random(cfg.population, len, &mut rngs);
    let mut best = pop.chromosomes[0].clone();
    let mut best_fitness = f64::NEG_INFINITY;
    let mut trajectory = Vec::with_capacity(cfg.epochs);
    let mut completed = true;

    for epoch in 0..cfg.epochs {
        objective.begin_epoch(epoch)?;
        pop.evaluate(objective, cfg.parallel)?;
        let top = pop.ranking()?[0];
        let top_fitness = pop.fitness.as_ref().unwrap()[top];
        if top_fitness > best_fitness {
            best_fitness = top_fitness;
            best.clone_from(&pop.chromosomes[top]);
        }
        trajectory.push(best_fitness);
        let report = EpochReport { epoch, best_fitness, inertia: None };
        if monitor(&report).is_break() {
            completed = epoch + 1 == cfg.epochs;
            break;
        }
        if epoch + 1 < cfg.epochs {
            pop = ga_step(&pop, cfg, &mut rngs)?;
        }
    }
    Ok(RunOutcome { best, best_fitness, trajectory, inertia: Vec::new(), completed })
}
