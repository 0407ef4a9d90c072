use crate::ca::{Configuration, RuleTable, Stepper};
use crate::error::{Error, Result};

use super::{FitnessValue, IcBatch, Task};

fn check_odd(width: usize) -> Result<()> {
    if width.is_multiple_of(2) {
        return Err(Error::EvenWidth(width));
    }
    Ok(())
}

fn classify_with(stepper: &mut Stepper, ic: &Configuration, steps: usize) -> Result<bool> {
    let majority = 2 * ic.count_ones() > ic.width();
    let last = stepper.run_final(ic, steps)?;
    Ok(last.uniform_state() == Some(majority))
}

/// Whether the row after `steps` updates is all 1s for a majority-1 IC
/// (all 0s for a majority-0 IC).
pub fn classify_density(rule: &RuleTable, ic: &Configuration, steps: usize) -> Result<bool> {
    check_odd(ic.width())?;
    classify_with(&mut Stepper::new(rule, ic.width())?, ic, steps)
}

/// Fraction of the batch classified correctly.
pub fn f100(rule: &RuleTable, batch: &IcBatch, steps: usize) -> Result<FitnessValue> {
    if batch.is_empty() {
        return Err(Error::invalid("empty IC batch"));
    }
    check_odd(batch.width())?;
    let mut stepper = Stepper::new(rule, batch.width())?;
    let mut correct = 0usize;
    for ic in batch.ics() {
        if classify_with(&mut stepper, ic, steps)? {
            correct += 1;
        }
    }
    Ok(FitnessValue { value: correct as f64 / batch.len() as f64, task: Task::Density })
}
