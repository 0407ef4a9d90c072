use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::ca::RuleTable;
use crate::error::Result;
use crate::objectives::{IcBatch, Task, TaskObjective, COMPRESSOR_ID};
use crate::optimizers::{Algorithm, EpochReport, OptimizerConfig};
use crate::seed::{derive_seed, tags};

/// Outcome of one seeded optimizer run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub task: Task,
    pub algorithm: Algorithm,
    /// Best rule found, as `r<radius>:<hex>`.
    pub best_rule: String,
    /// Best fitness on the training batches (the batch the rule was scored on when found).
    pub training_fitness: f64,
    /// Best rule re-scored on a held-out batch.
    pub final_fitness: f64,
    pub holdout_seed: u64,
    /// Best-so-far fitness after each epoch.
    pub trajectory: Vec<f64>,
    /// Inertia weight per epoch (PSO variants).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inertia: Vec<f64>,
    /// False when the wall-clock budget cut the run short.
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compressor: Option<String>,
    pub optimizer: OptimizerConfig,
    /// Not serialized, so that result files are reproducible byte for byte.
    #[serde(skip)]
    pub wall_clock: Duration,
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    derive_seed(master, index as u64)
}

/// Runs trial `index` of `cfg`: search on freshly resampled batches, then
/// re-score the best rule on a held-out batch.
pub fn run_trial(cfg: &ExperimentConfig, index: usize) -> Result<TrialResult> {
    cfg.validate()?;
    let started = Instant::now();
    let seed = trial_seed(cfg.seed, index);
    let mut objective = TaskObjective::new(
        cfg.task,
        cfg.radius,
        cfg.width,
        cfg.steps,
        cfg.batch,
        derive_seed(seed, tags::TRAIN_BATCH),
    )?;
    let opt = cfg.optimizer_config(derive_seed(seed, tags::OPTIMIZER));
    let deadline = cfg.trial_timeout_secs.map(|s| started + Duration::from_secs_f64(s));
    let mut monitor = |_: &EpochReport| match deadline {
        Some(d) if Instant::now() >= d => ControlFlow::Break(()),
        _ => ControlFlow::Continue(()),
    };
    let outcome = opt.run(cfg.algorithm, &mut objective, cfg.rule_bits(), &mut monitor)?;

    let best = RuleTable::from_bits(cfg.radius, &outcome.best)?;
    let holdout_seed = derive_seed(seed, tags::HOLDOUT_BATCH);
    let holdout = IcBatch::sample_flat(cfg.width, cfg.batch, holdout_seed)?;
    let final_fitness = cfg.task.evaluate(&best, &holdout, cfg.steps)?.value;

    Ok(TrialResult {
        trial: index,
        seed,
        task: cfg.task,
        algorithm: cfg.algorithm,
        best_rule: best.to_string(),
        training_fitness: outcome.best_fitness,
        final_fitness,
        holdout_seed,
        trajectory: outcome.trajectory,
        inertia: outcome.inertia,
        complete: outcome.completed,
        compressor: (cfg.task == Task::Chaos).then(|| COMPRESSOR_ID.to_string()),
        optimizer: opt,
        wall_clock: started.elapsed(),
    })
}

impl TrialResult {
    pub fn rule(&self) -> Result<RuleTable> {
        self.best_rule.parse()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trial serializes") + "\n"
    }

    /// `epoch,best_fitness` rows, epochs counted from 1.
    pub fn trajectory_csv(&self) -> String {
        let mut s = String::from("epoch,best_fitness\n");
        for (e, f) in self.trajectory.iter().enumerate() {
            s.push_str(&format!("{},{}\n", e + 1, f));
        }
        s
    }
}
