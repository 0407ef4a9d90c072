//! Seeded multi-trial experiments with reproducible on-disk artifacts.

mod config;
mod experiment;
pub mod report;
mod trial;

pub use config::{ExperimentConfig, ParamOverrides};
pub use experiment::{
    deterministic_artifacts, mean_std, run_experiment, trial_stem, ExperimentSummary, TrialRecord,
};
pub use trial::{run_trial, trial_seed, TrialResult};
