use crate::ca::{evolve, RuleTable, SpacetimeHistory};
use crate::error::{Error, Result};

use super::compress::nc;
use super::{FitnessValue, IcBatch, Task};

/// Piecewise-total normalized compression of a history.
///
/// `piecewise = sum_{i=0..=T} nc(row_i) / T` (divisor `T`, not `T + 1`),
/// `total = nc(all rows)`, and the result is their mean. Rows are serialized
/// as ASCII `'0'`/`'1'`.
pub fn nc_pt(history: &SpacetimeHistory) -> Result<f64> {
    let steps = history.steps();
    if steps == 0 {
        return Err(Error::invalid("piecewise-total compression needs at least two rows"));
    }
    let mut piecewise = 0.0;
    for row in history.rows() {
        piecewise += nc(&row.to_ascii())?;
    }
    piecewise /= steps as f64;
    let total = nc(&history.to_ascii())?;
    Ok((piecewise + total) / 2.0)
}

/// Mean `nc_pt` of the rule's evolution over every IC in the batch.
pub fn chaos_fitness(rule: &RuleTable, batch: &IcBatch, steps: usize) -> Result<FitnessValue> {
    if batch.is_empty() {
        return Err(Error::invalid("empty IC batch"));
    }
    let mut sum = 0.0;
    for ic in batch.ics() {
        sum += nc_pt(&evolve(ic, rule, steps)?)?;
    }
    Ok(FitnessValue { value: sum / batch.len() as f64, task: Task::Chaos })
}
