//! One-dimensional binary cellular automata on a ring.

mod config;
mod history;
mod rule;
mod step;

pub use config::Configuration;
pub use history::{evolve, SpacetimeHistory};
pub use rule::{table_len, RuleTable, MAX_RADIUS};
pub use step::{step, Stepper};

/// Builds a rule table from its Wolfram number.
pub fn decode_rule(number: u128, radius: u32) -> crate::Result<RuleTable> {
    RuleTable::decode(number, radius)
}

pub fn encode_rule(table: &RuleTable) -> crate::Result<u128> {
    table.encode()
}

pub fn uniform_state(config: &Configuration) -> Option<bool> {
    config.uniform_state()
}
