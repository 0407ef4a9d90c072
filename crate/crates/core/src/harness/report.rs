use std::fs;
use std::path::{Path, PathBuf};

use super::experiment::ExperimentSummary;
use super::TrialResult;
use crate::error::{Error, Result};

/// One experiment directory found by [`collect`].
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub dir: PathBuf,
    pub summary: ExperimentSummary,
    /// `(epoch, trial, best_fitness)` rows across all trials.
    pub curves: Vec<(usize, usize, f64)>,
}

impl ExperimentReport {
    /// Table row like `ga density 0.9000 ±0.0312`.
    pub fn table_row(&self) -> String {
        let c = &self.summary.config;
        match (self.summary.mean_final_fitness, self.summary.std_final_fitness) {
            (Some(m), Some(s)) => format!("{} {} {m:.4} ±{s:.4}", c.algorithm, c.task),
            _ => format!("{} {} n/a", c.algorithm, c.task),
        }
    }

    pub fn curves_csv(&self) -> String {
        let mut s = String::from("epoch,trial,best_fitness\n");
        for (e, t, f) in &self.curves {
            s.push_str(&format!("{e},{t},{f}\n"));
        }
        s
    }
}

fn find_summaries(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut subdirs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_dir() {
            subdirs.push(path);
        } else if path.file_name().is_some_and(|n| n == "summary.json") {
            out.push(path);
        }
    }
    subdirs.sort();
    for d in subdirs {
        find_summaries(&d, out)?;
    }
    Ok(())
}

fn read_curve(path: &Path, trial: usize) -> std::result::Result<Vec<(usize, usize, f64)>, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    if lines.next() != Some("epoch,best_fitness") {
        return Err("missing epoch,best_fitness header".into());
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let (e, f) = line.split_once(',').ok_or(format!("line {}: expected two columns", i + 2))?;
            let e = e.parse().map_err(|_| format!("line {}: bad epoch", i + 2))?;
            let f = f.parse().map_err(|_| format!("line {}: bad fitness", i + 2))?;
            Ok((e, trial, f))
        })
        .collect()
}

/// Loads every experiment under `root` (the directory itself or any
/// subdirectory holding a `summary.json`). Fails listing every missing or
/// unreadable file.
pub fn collect(root: &Path) -> Result<Vec<ExperimentReport>> {
    let mut summaries = Vec::new();
    find_summaries(root, &mut summaries)?;
    summaries.sort();
    if summaries.is_empty() {
        return Err(Error::invalid(format!("no summary.json under {}", root.display())));
    }
    let mut problems = Vec::new();
    let mut reports = Vec::new();
    for path in summaries {
        let dir = path.parent().unwrap().to_path_buf();
        let summary = match ExperimentSummary::load(&path) {
            Ok(s) => s,
            Err(e) => {
                problems.push(e.to_string());
                continue;
            }
        };
        let mut curves = Vec::new();
        for rec in &summary.trials {
            if let Some(json) = &rec.json {
                let p = dir.join(json);
                let parsed = fs::read_to_string(&p)
                    .map_err(|e| e.to_string())
                    .and_then(|t| serde_json::from_str::<TrialResult>(&t).map_err(|e| e.to_string()));
                if let Err(e) = parsed {
                    problems.push(format!("{}: {e}", p.display()));
                }
            }
            let Some(csv) = &rec.csv else { continue };
            let p = dir.join(csv);
            match read_curve(&p, rec.trial) {
                Ok(rows) => curves.extend(rows),
                Err(e) => problems.push(format!("{}: {e}", p.display())),
            }
        }
        curves.sort_by_key(|&(e, t, _)| (e, t));
        reports.push(ExperimentReport { dir, summary, curves });
    }
    if !problems.is_empty() {
        return Err(Error::invalid(format!("corrupt experiment artifacts:\n  {}", problems.join("\n  "))));
    }
    Ok(reports)
}
