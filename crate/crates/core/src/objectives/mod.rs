//! Task fitness functions: density classification and compression-based chaos.

mod chaos;
mod compress;
mod density;
mod sampler;
mod task;

use serde::{Deserialize, Serialize};

pub use chaos::{chaos_fitness, nc_pt};
pub use compress::{deflated_len, nc, COMPRESSOR_ID, LEVEL as COMPRESSION_LEVEL};
pub use density::{classify_density, f100};
pub use sampler::{sample_flat_ic, sample_with_ones, IcBatch};
pub use task::TaskObjective;

use crate::ca::RuleTable;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Density,
    Chaos,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Density => "density",
            Task::Chaos => "chaos",
        }
    }

    /// Scores `rule` on `batch` with this task's fitness.
    pub fn evaluate(self, rule: &RuleTable, batch: &IcBatch, steps: usize) -> Result<FitnessValue> {
        match self {
            Task::Density => f100(rule, batch, steps),
            Task::Chaos => chaos_fitness(rule, batch, steps),
        }
    }
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Task {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "density" => Ok(Task::Density),
            "chaos" => Ok(Task::Chaos),
            _ => Err(crate::Error::Parse(format!("unknown task {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitnessValue {
    pub value: f64,
    pub task: Task,
}
