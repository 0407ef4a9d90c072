//! Search algorithms over fixed-length bit strings (and real vectors for the
//! continuous PSO), driven through a common black-box [`Objective`].

mod binary;
mod continuous;
mod ga;
mod inertia;
mod mutation;
mod topology;

use std::ops::ControlFlow;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use binary::{
    bgl_pso, bgl_velocity_update, binary_pso, bit_velocity, bit_velocity_global_local,
    bpso_position_update, bpso_velocity_update, flip_probability, Particle, SwarmState, Variant,
};
pub use continuous::{continuous_pso, ContinuousOutcome, ContinuousPsoConfig};
pub use ga::{ga, ga_step, GaPopulation};
pub use inertia::{chaotic_inertia, ChaoticInertia, InertiaMode};
pub use mutation::{mutate_particle, MutationPmf};
pub use topology::{neighborhood, Topology};

use crate::error::{Error, Result};
use crate::seed::SimRng;

/// A fitness function to maximize over bit strings.
///
/// `begin_epoch` runs on the coordinating thread before each epoch's
/// evaluations (e.g. to resample an IC batch); `evaluate` may be called
/// concurrently.
pub trait Objective: Sync {
    fn begin_epoch(&mut self, _epoch: usize) -> Result<()> {
        Ok(())
    }

    fn evaluate(&self, bits: &[bool]) -> Result<f64>;
}

/// Adapts a plain function into an [`Objective`] with no per-epoch state.
pub struct FnObjective<F>(pub F);

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[bool]) -> Result<f64> + Sync,
{
    fn evaluate(&self, bits: &[bool]) -> Result<f64> {
        (self.0)(bits)
    }
}

/// Number of ones; the classic easy benchmark for bit-string optimizers.
pub fn onemax(bits: &[bool]) -> Result<f64> {
    Ok(bits.iter().filter(|&&b| b).count() as f64)
}

/// Scores every candidate, optionally in parallel. Results are identical either way.
pub fn evaluate_all<O: Objective + ?Sized>(
    objective: &O,
    candidates: &[Vec<bool>],
    parallel: bool,
) -> Result<Vec<f64>> {
    let eval = |(index, bits): (usize, &Vec<bool>)| -> Result<f64> {
        let value = objective
            .evaluate(bits)
            .map_err(|e| Error::Candidate { index, source: Box::new(e) })?;
        if !value.is_finite() {
            let position = bits.iter().map(|&b| b as u8 as f64).collect();
            return Err(Error::Candidate {
                index,
                source: Box::new(Error::NonFinite { value, position }),
            });
        }
        Ok(value)
    };
    if parallel {
        candidates.par_iter().enumerate().map(eval).collect()
    } else {
        candidates.iter().enumerate().map(eval).collect()
    }
}

pub(crate) fn random_bits(len: usize, rng: &mut SimRng) -> Vec<bool> {
    (0..len).map(|_| rng.random_bool(0.5)).collect()
}

/// Progress after one epoch, handed to the caller's monitor.
#[derive(Clone, Debug)]
pub struct EpochReport {
    pub epoch: usize,
    pub best_fitness: f64,
    /// Inertia weight used for the update that follows (PSO only).
    pub inertia: Option<f64>,
}

/// Monitor that never interrupts.
pub fn no_monitor(_: &EpochReport) -> ControlFlow<()> {
    ControlFlow::Continue(())
}

/// Result of a bit-string search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub best: Vec<bool>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each completed epoch.
    pub trajectory: Vec<f64>,
    /// Inertia weight per epoch (PSO variants; empty for the GA).
    pub inertia: Vec<f64>,
    /// False when the monitor stopped the run early.
    pub completed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ga,
    Bpso,
    Bglpso,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ga => "ga",
            Algorithm::Bpso => "bpso",
            Algorithm::Bglpso => "bglpso",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ga" => Ok(Algorithm::Ga),
            "bpso" => Ok(Algorithm::Bpso),
            "bglpso" => Ok(Algorithm::Bglpso),
            _ => Err(Error::Parse(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// Parameters shared by the bit-string optimizers. Each algorithm reads the fields it uses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub epochs: usize,
    /// Swarm size for the PSO variants, population size for the GA.
    pub population: usize,
    pub c1: f64,
    pub c2: f64,
    pub w1: f64,
    pub w2: f64,
    pub vmax: f64,
    pub inertia_mode: InertiaMode,
    pub neighborhood: usize,
    pub topology: Topology,
    pub mutation_pmf: Vec<f64>,
    pub elite_fraction: f64,
    pub mutation_count: usize,
    pub seed: u64,
    /// Evaluate candidates on the rayon pool. Execution-only: results do not
    /// depend on it, so it is not persisted.
    #[serde(skip, default = "enabled")]
    pub parallel: bool,
}

fn enabled() -> bool {
    true
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            epochs: 200,
            population: 100,
            c1: 2.0,
            c2: 2.0,
            w1: 0.4,
            w2: 0.9,
            vmax: 6.0,
            inertia_mode: InertiaMode::Logistic,
            neighborhood: 5,
            topology: Topology::Ring,
            mutation_pmf: MutationPmf::default().probabilities().to_vec(),
            elite_fraction: 0.2,
            mutation_count: 2,
            seed: 0,
            parallel: true,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::invalid("epochs must be at least 1"));
        }
        if !(self.vmax.is_finite() && self.vmax > 0.0) {
            return Err(Error::invalid("vmax must be positive"));
        }
        if !(self.elite_fraction > 0.0 && self.elite_fraction < 1.0) {
            return Err(Error::invalid("elite fraction must lie in (0, 1)"));
        }
        MutationPmf::new(self.mutation_pmf.clone())?;
        Ok(())
    }

    /// Runs the chosen algorithm on an objective over `len`-bit strings.
    pub fn run<O: Objective>(
        &self,
        algorithm: Algorithm,
        objective: &mut O,
        len: usize,
        monitor: &mut dyn FnMut(&EpochReport) -> ControlFlow<()>,
    ) -> Result<RunOutcome> {
        match algorithm {
            Algorithm::Ga => ga(objective, len, self, monitor),
            Algorithm::Bpso => binary_pso(objective, len, self, monitor),
            Algorithm::Bglpso => bgl_pso(objective, len, self, monitor),
        }
    }
}
