use crate::ca::RuleTable;
use crate::error::Result;
use crate::optimizers::Objective;
use crate::seed::derive_seed;

use super::{IcBatch, Task};

/// Scores rule tables (as bit strings) on a task, drawing a fresh flat IC
/// batch at the start of every epoch.
#[derive(Clone, Debug)]
pub struct TaskObjective {
    pub task: Task,
    pub radius: u32,
    pub width: usize,
    pub steps: usize,
    pub batch_size: usize,
    batch_seed: u64,
    batch: IcBatch,
}

impl TaskObjective {
    /// Epoch `e` uses the batch seeded with `derive_seed(batch_seed, e)`.
    pub fn new(task: Task, radius: u32, width: usize, steps: usize, batch_size: usize, batch_seed: u64) -> Result<Self> {
        let batch = IcBatch::sample_flat(width, batch_size, derive_seed(batch_seed, 0))?;
        Ok(Self { task, radius, width, steps, batch_size, batch_seed, batch })
    }

    pub fn batch(&self) -> &IcBatch {
        &self.batch
    }

    pub fn score(&self, rule: &RuleTable) -> Result<f64> {
        Ok(self.task.evaluate(rule, &self.batch, self.steps)?.value)
    }
}

impl Objective for TaskObjective {
    fn begin_epoch(&mut self, epoch: usize) -> Result<()> {
        self.batch = IcBatch::sample_flat(self.width, self.batch_size, derive_seed(self.batch_seed, epoch as u64))?;
        Ok(())
    }

    fn evaluate(&self, bits: &[bool]) -> Result<f64> {
        self.score(&RuleTable::from_bits(self.radius, bits)?)
    }
}
