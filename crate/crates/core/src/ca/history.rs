use super::config::{words_for, Configuration};
use super::rule::RuleTable;
use super::step::Stepper;
use crate::error::{Error, Result};

/// The rows `A_0(s) .. A_T(s)` produced by evolving one initial configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacetimeHistory {
    rows: Vec<Configuration>,
    rule: RuleTable,
}

impl SpacetimeHistory {
    /// Wraps precomputed rows, checking that every row has the same width.
    pub fn from_rows(rows: Vec<Configuration>, rule: RuleTable) -> Result<Self> {
        let first = rows.first().ok_or_else(|| Error::invalid("history needs at least one row"))?;
        let width = first.width();
        if let Some(bad) = rows.iter().find(|r| r.width() != width) {
            return Err(Error::WidthMismatch { expected: width, actual: bad.width() });
        }
        Ok(Self { rows, rule })
    }

    pub fn rows(&self) -> &[Configuration] {
        &self.rows
    }

    pub fn rule(&self) -> &RuleTable {
        &self.rule
    }

    pub fn width(&self) -> usize {
        self.rows[0].width()
    }

    /// Number of steps `T` (one less than the row count).
    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn last(&self) -> &Configuration {
        self.rows.last().expect("history is never empty")
    }

    /// Rows as `'0'`/`'1'` bytes, concatenated in time order without separators.
    pub fn to_ascii(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows.len() * self.width());
        for row in &self.rows {
            out.extend(row.to_ascii());
        }
        out
    }

    /// One text line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.width() + 1));
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    /// Whether every adjacent pair of rows obeys one step of the rule.
    pub fn is_consistent(&self) -> bool {
        let Ok(mut stepper) = Stepper::new(&self.rule, self.width()) else {
            return false;
        };
        self.rows
            .windows(2)
            .all(|w| stepper.step(&w[0]).is_ok_and(|next| next == w[1]))
    }
}

/// Evolves `ic` for `steps` updates, returning all `steps + 1` rows.
pub fn evolve(ic: &Configuration, rule: &RuleTable, steps: usize) -> Result<SpacetimeHistory> {
    let mut stepper = Stepper::new(rule, ic.width())?;
    let width = ic.width();
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(ic.clone());
    let mut next = vec![0; words_for(width)];
    while rows.len() <= steps {
        let cur = rows.last().unwrap();
        stepper.step_words(cur.words(), &mut next);
        if next.as_slice() == cur.words() {
            // Fixed point: the remaining rows are copies.
            let fixed = cur.clone();
            rows.resize(steps + 1, fixed);
            break;
        }
        rows.push(Configuration::from_words(width, next.clone()));
    }
    Ok(SpacetimeHistory { rows, rule: rule.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_is_ic() {
        let ic: Configuration = "0110100".parse().unwrap();
        let h = evolve(&ic, &RuleTable::decode(110, 1).unwrap(), 0).unwrap();
        assert_eq!(h.rows(), &[ic]);
        assert_eq!(h.steps(), 0);
    }

    #[test]
    fn all_zero_fixed_point() {
        let rule = RuleTable::decode(0b1010_1010, 1).unwrap();
        let h = evolve(&Configuration::zeros(149), &rule, 150).unwrap();
        assert_eq!(h.rows().len(), 151);
        assert!(h.rows().iter().all(|r| r.uniform_state() == Some(false)));
        assert!(h.is_consistent());
    }

    #[test]
    fn rule_250_from_centered_single_one() {
        let ic = Configuration::single_one_centered(11);
        let h = evolve(&ic, &RuleTable::decode(250, 1).unwrap(), 5).unwrap();
        let expect = "\
00000100000
00001010000
00010101000
00101010100
01010101010
10101010101
";
        assert_eq!(h.to_text(), expect);
        assert!(h.is_consistent());
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let rule = RuleTable::zeros(1).unwrap();
        assert!(SpacetimeHistory::from_rows(vec![], rule.clone()).is_err());
        let rows = vec![Configuration::zeros(5), Configuration::zeros(6)];
        assert!(SpacetimeHistory::from_rows(rows, rule).is_err());
    }
}
