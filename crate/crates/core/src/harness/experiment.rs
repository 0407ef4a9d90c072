use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{run_trial, ExperimentConfig, TrialResult};
use crate::error::{Error, Result};
use crate::objectives::Task;

/// Pointer from a summary to one trial's files and headline numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_fitness: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub training_fitness: Option<f64>,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Aggregate over all trials of one experiment.
///
/// Means and standard deviations are over complete trials only; the standard
/// deviation is the sample (n - 1) estimate, 0 for a single trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialRecord>,
    pub completed_trials: usize,
    pub mean_final_fitness: Option<f64>,
    pub std_final_fitness: Option<f64>,
    pub mean_training_fitness: Option<f64>,
    pub std_training_fitness: Option<f64>,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compressor: Option<String>,
    /// Full per-trial results (not serialized; the trial files hold them).
    #[serde(skip)]
    pub results: Vec<TrialResult>,
}

/// Mean and sample standard deviation, `None` for no data.
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    Some((mean, std))
}

pub fn trial_stem(index: usize) -> String {
    format!("trial_{index:03}")
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

impl ExperimentSummary {
    fn build(cfg: &ExperimentConfig, outcomes: Vec<Result<TrialResult>>, persisted: bool) -> Self {
        let mut records = Vec::with_capacity(outcomes.len());
        let mut results = Vec::new();
        for (index, outcome) in outcomes.into_iter().enumerate() {
            let stem = trial_stem(index);
            let files = |ext: &str| persisted.then(|| format!("{stem}.{ext}"));
            match outcome {
                Ok(r) => {
                    records.push(TrialRecord {
                        trial: index,
                        json: files("json"),
                        csv: files("csv"),
                        final_fitness: Some(r.final_fitness),
                        training_fitness: Some(r.training_fitness),
                        complete: r.complete,
                        error: None,
                    });
                    results.push(r);
                }
                Err(e) => records.push(TrialRecord {
                    trial: index,
                    json: None,
                    csv: None,
                    final_fitness: None,
                    training_fitness: None,
                    complete: false,
                    error: Some(e.to_string()),
                }),
            }
        }
        let done: Vec<&TrialResult> = results.iter().filter(|r| r.complete).collect();
        let finals: Vec<f64> = done.iter().map(|r| r.final_fitness).collect();
        let trains: Vec<f64> = done.iter().map(|r| r.training_fitness).collect();
        let (mf, sf) = mean_std(&finals).unzip();
        let (mt, st) = mean_std(&trains).unzip();
        Self {
            config: cfg.result_echo(),
            completed_trials: done.len(),
            complete: done.len() == records.len(),
            trials: records,
            mean_final_fitness: mf,
            std_final_fitness: sf,
            mean_training_fitness: mt,
            std_training_fitness: st,
            compressor: (cfg.task == Task::Chaos).then(|| crate::objectives::COMPRESSOR_ID.to_string()),
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes") + "\n"
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| Error::Json { path: path.into(), source })
    }
}

/// Runs every trial (concurrently, up to `cfg.workers` threads) and, when
/// `cfg.output_dir` is set, writes `config.json`, per-trial JSON and CSV
/// files, `summary.json`, and wall-clock times in `timings.json`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<TrialResult>> = pool.install(|| {
        let run = |i: usize| run_trial(cfg, i);
        if cfg.workers == 1 {
            (0..cfg.trials).map(run).collect()
        } else {
            (0..cfg.trials).into_par_iter().map(run).collect()
        }
    });
    let summary = ExperimentSummary::build(cfg, outcomes, cfg.output_dir.is_some());
    if let Some(dir) = &cfg.output_dir {
        persist(dir, cfg, &summary)?;
    }
    Ok(summary)
}

fn persist(dir: &Path, cfg: &ExperimentConfig, summary: &ExperimentSummary) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write(&dir.join("config.json"), &cfg.to_json())?;
    let mut timings = serde_json::Map::new();
    for r in &summary.results {
        let stem = trial_stem(r.trial);
        write(&dir.join(format!("{stem}.json")), &r.to_json())?;
        write(&dir.join(format!("{stem}.csv")), &r.trajectory_csv())?;
        timings.insert(stem, serde_json::json!(r.wall_clock.as_secs_f64()));
    }
    write(&dir.join("summary.json"), &summary.to_json())?;
    let timings = serde_json::to_string_pretty(&timings).expect("timings serialize") + "\n";
    write(&dir.join("timings.json"), &timings)
}

/// Files written by [`run_experiment`] whose bytes depend only on the config.
pub fn deterministic_artifacts(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name != "timings.json" && name != "config.json" && (name.ends_with(".json") || name.ends_with(".csv"))
        })
        .collect();
    files.sort();
    Ok(files)
}
