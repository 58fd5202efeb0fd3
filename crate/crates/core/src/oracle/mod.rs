//! Reference implementations for cross-checking the solver.
//!
//! Nothing here goes through the K- or J-sequence machinery or the
//! optimality checker: games are evaluated by plain recursion, strategies
//! are enumerated outright, and the concrete games have their own rule
//! checkers. The [`suites`] module runs the cross-checks on generated games.

mod enumerate;
mod minimax;
pub mod random;
mod rules;
pub mod suites;

use std::fmt;

pub use enumerate::{count_strategies, enumerate_strategies, optimal_by_enumeration, Enumeration};
pub use minimax::minimax_direct;
pub use random::{random_game, random_minmax_game, random_tree, GameShape, RandomOutcome};
pub use rules::{count_ttt_games, queens_backtracking, queens_exists_exhaustive, queens_valid, ttt_play_is_legal};

/// Caps for the exhaustive oracles. Exceeding a cap is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_paths: u64,
    pub max_strategies: u64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_paths: 100_000,
            max_strategies: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetParseError(pub String);

impl fmt::Display for BudgetParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid budget `{}`: expected N or paths=N,strategies=N", self.0)
    }
}

impl std::error::Error for BudgetParseError {}

impl OracleConfig {
    /// Applies a budget override. A bare positive integer sets both caps;
    /// otherwise a comma-separated list of `paths=N` and `strategies=N`.
    pub fn with_budget(mut self, spec: &str) -> Result<Self, BudgetParseError> {
        let err = || BudgetParseError(spec.to_string());
        let positive = |s: &str| s.trim().parse::<u64>().ok().filter(|&v| v > 0);
        if let Some(v) = positive(spec) {
            self.max_paths = v;
            self.max_strategies = v;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(err)?;
            let value = positive(value).ok_or_else(err)?;
            match key.trim() {
                "paths" => self.max_paths = value,
                "strategies" => self.max_strategies = value,
                _ => return Err(err()),
            }
        }
        Ok(self)
    }

    /// Defaults, overridden by the `HOG_BUDGET` environment variable if set.
    pub fn from_env() -> Result<Self, BudgetParseError> {
        match std::env::var("HOG_BUDGET") {
            Ok(spec) => OracleConfig::default().with_budget(&spec),
            Err(_) => Ok(OracleConfig::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_overrides() {
        let c = OracleConfig::default().with_budget("500").unwrap();
        assert_eq!((c.max_paths, c.max_strategies), (500, 500));
        let c = OracleConfig::default().with_budget("strategies=7").unwrap();
        assert_eq!((c.max_paths, c.max_strategies), (100_000, 7));
        let c = OracleConfig::default().with_budget("paths=3, strategies=4").unwrap();
        assert_eq!((c.max_paths, c.max_strategies), (3, 4));
        for bad in ["0", "", "paths", "paths=0", "depth=3", "-1"] {
            assert!(OracleConfig::default().with_budget(bad).is_err(), "{bad}");
        }
    }
}
