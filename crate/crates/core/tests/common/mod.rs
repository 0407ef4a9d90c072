//! Cell-by-cell reference implementations used as test oracles.
#![allow(dead_code)]

use evoca_core::ca::{Configuration, RuleTable};

/// One synchronous update on a ring, reading the table entry for each
/// neighborhood with the leftmost cell as the most significant bit.
pub fn naive_step(cells: &[bool], rule: &RuleTable) -> Vec<bool> {
    let n = cells.len() as isize;
    let r = rule.radius() as isize;
    (0..n)
        .map(|i| {
            let pattern = (-r..=r).fold(0usize, |acc, d| acc << 1 | cells[(i + d).rem_euclid(n) as usize] as usize);
            rule.get(pattern)
        })
        .collect()
}

pub fn naive_evolve(ic: &[bool], rule: &RuleTable, steps: usize) -> Vec<Vec<bool>> {
    let mut rows = vec![ic.to_vec()];
    for _ in 0..steps {
        let next = naive_step(rows.last().unwrap(), rule);
        rows.push(next);
    }
    rows
}

/// Density verdict from the full naive evolution, without any early exit.
pub fn naive_classify(ic: &[bool], rule: &RuleTable, steps: usize) -> bool {
    let ones = ic.iter().filter(|&&b| b).count();
    let target = 2 * ones > ic.len();
    naive_evolve(ic, rule, steps).last().unwrap().iter().all(|&b| b == target)
}

pub fn bits_of(config: &Configuration) -> Vec<bool> {
    config.to_bits()
}
