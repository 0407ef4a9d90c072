use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ca::{table_len, MAX_RADIUS};
use crate::error::{Error, Result};
use crate::objectives::Task;
use crate::optimizers::{Algorithm, InertiaMode, OptimizerConfig, Topology};

/// Optional replacements for the optimizer defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub population: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vmax: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inertia_mode: Option<InertiaMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighborhood: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<Topology>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation_pmf: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elite_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation_count: Option<usize>,
}

impl ParamOverrides {
    pub fn apply(&self, mut cfg: OptimizerConfig) -> OptimizerConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { cfg.$f = v.clone(); } )* };
        }
        take!(population, c1, c2, w1, w2, vmax, inertia_mode, neighborhood, topology, mutation_pmf, elite_fraction, mutation_count);
        cfg
    }
}

/// Everything needed to reproduce one multi-trial experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: Task,
    pub algorithm: Algorithm,
    pub radius: u32,
    /// Lattice width `N`.
    pub width: usize,
    /// CA steps `T` per evaluation.
    pub steps: usize,
    pub epochs: usize,
    pub trials: usize,
    /// ICs per fitness evaluation.
    pub batch: usize,
    pub seed: u64,
    pub overrides: ParamOverrides,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Worker threads; 0 uses the rayon default. Does not affect results.
    pub workers: usize,
    /// Per-trial wall-clock budget; an exceeded trial keeps its partial trajectory.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial_timeout_secs: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            task: Task::Density,
            algorithm: Algorithm::Ga,
            radius: 3,
            width: 149,
            steps: 150,
            epochs: 200,
            trials: 10,
            batch: 100,
            seed: 0,
            overrides: ParamOverrides::default(),
            output_dir: None,
            workers: 0,
            trial_timeout_secs: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radius == 0 || self.radius > MAX_RADIUS {
            return Err(Error::InvalidRadius(self.radius));
        }
        let span = 2 * self.radius as usize + 1;
        if self.width < span {
            return Err(Error::LatticeTooSmall { width: self.width, span });
        }
        if self.task == Task::Density && self.width.is_multiple_of(2) {
            return Err(Error::EvenWidth(self.width));
        }
        if self.task == Task::Chaos && self.steps == 0 {
            return Err(Error::invalid("chaos task needs at least one CA step"));
        }
        if self.trials == 0 || self.epochs == 0 || self.batch == 0 {
            return Err(Error::invalid("trials, epochs and batch must be at least 1"));
        }
        if self.trial_timeout_secs.is_some_and(|t| t.is_nan() || t <= 0.0) {
            return Err(Error::invalid("trial timeout must be positive"));
        }
        self.optimizer_config(0).validate()
    }

    /// Bits per candidate rule table.
    pub fn rule_bits(&self) -> usize {
        table_len(self.radius)
    }

    /// Optimizer settings for one trial, seeded with `seed`.
    pub fn optimizer_config(&self, seed: u64) -> OptimizerConfig {
        let base = OptimizerConfig {
            epochs: self.epochs,
            seed,
            parallel: self.workers != 1,
            ..OptimizerConfig::default()
        };
        self.overrides.apply(base)
    }

    /// The config as recorded in result files, without execution-only settings.
    pub fn result_echo(&self) -> Self {
        Self { output_dir: None, workers: 0, ..self.clone() }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("experiment config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| Error::Json { path: path.into(), source })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_protocol() {
        let c = ExperimentConfig::default();
        assert_eq!((c.radius, c.width, c.steps, c.epochs, c.trials, c.batch), (3, 149, 150, 200, 10, 100));
        c.validate().unwrap();
        assert_eq!(c.rule_bits(), 128);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ExperimentConfig::from_json(r#"{"task":"density","bogus":1}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"overrides":{"c3":1.0}}"#).is_err());
        let c = ExperimentConfig::from_json(r#"{"task":"chaos","algorithm":"bglpso","overrides":{"neighborhood":3}}"#).unwrap();
        assert_eq!(c.task, Task::Chaos);
        assert_eq!(c.optimizer_config(1).neighborhood, 3);
        assert_eq!(ExperimentConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn validation() {
        let even = ExperimentConfig { width: 148, ..Default::default() };
        assert!(matches!(even.validate(), Err(Error::EvenWidth(148))));
        assert!(ExperimentConfig { width: 148, task: Task::Chaos, ..Default::default() }.validate().is_ok());
        assert!(ExperimentConfig { width: 5, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { trials: 0, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { radius: 9, ..Default::default() }.validate().is_err());
        let bad_pmf = ParamOverrides { mutation_pmf: Some(vec![0.2]), ..Default::default() };
        assert!(ExperimentConfig { overrides: bad_pmf, ..Default::default() }.validate().is_err());
    }
}
