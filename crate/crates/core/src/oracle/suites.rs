//! Seeded cross-check suites. Each returns a report listing the failing
//! seeds, so a failure can be replayed with the same seed.

use std::fmt;

use super::random::{random_game, random_minmax_game, random_spec, random_tree, GameShape, RandomOutcome};
use super::{count_strategies, minimax_direct, optimal_by_enumeration, OracleConfig};
use crate::error::Result;
use crate::quantifier::Quantifier;
use crate::registry::NamedOutcome;
use crate::selection::{attains_exhaustive, j_sequence, Attainment, SelectionFunction, DEFAULT_ATTAINMENT_BUDGET};
use crate::solver::{is_optimal, optimal_outcome, spath, strategy_of_selection_tree};
use crate::tree::{has_path, materialize, paths_enumerate, prune, MaterializedTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, seed: u64, outcome: Result<std::result::Result<(), String>>) {
        self.cases += 1;
        let detail = match outcome {
            Ok(Ok(())) => return,
            Ok(Err(detail)) => detail,
            Err(e) => format!("error: {e}"),
        };
        self.failures.push(Failure { seed, detail });
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} failures",
            self.name,
            self.cases,
            self.failures.len()
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, " (first at seed {}: {})", first.seed, first.detail)?;
        }
        Ok(())
    }
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

/// Even seeds give integer games, odd seeds boolean games.
fn by_parity<T>(seed: u64, int: impl FnOnce(u64) -> T, boolean: impl FnOnce(u64) -> T) -> T {
    if seed.is_multiple_of(2) {
        int(seed)
    } else {
        boolean(seed)
    }
}

/// The play of the strategy built from the selection tree equals the play
/// computed by the J-sequence.
pub fn strategy_path_is_j_sequence_play(seed: u64, cases: u64) -> SuiteReport {
    fn case<R: RandomOutcome>(seed: u64) -> Result<std::result::Result<(), String>> {
        let (g, st) = random_game::<R>(seed, GameShape::default())?;
        let q = |p: &[String]| g.outcome(p);
        let s = strategy_of_selection_tree(g.tree(), &st, &q)?;
        let via_strategy = spath(&s);
        let via_sequence = j_sequence(g.tree(), &st).apply(&q)?;
        Ok(check(via_strategy == via_sequence, || {
            format!("strategy play {via_strategy:?}, J-sequence play {via_sequence:?}")
        }))
    }
    let mut r = SuiteReport::new("strategy path vs J-sequence play");
    for seed in seed..seed + cases {
        r.record(seed, by_parity(seed, case::<i64>, case::<bool>));
    }
    r
}

/// The extracted strategy realizes the optimal outcome.
pub fn strategy_realizes_optimum(seed: u64, cases: u64) -> SuiteReport {
    fn case<R: RandomOutcome>(seed: u64) -> Result<std::result::Result<(), String>> {
        let (g, st) = random_game::<R>(seed, GameShape::default())?;
        let s = strategy_of_selection_tree(g.tree(), &st, &|p| g.outcome(p))?;
        let realized = g.outcome(&spath(&s))?;
        let optimal = optimal_outcome(&g)?;
        Ok(check(realized == optimal, || {
            format!("realized {realized}, optimal {optimal}")
        }))
    }
    let mut r = SuiteReport::new("strategy realizes optimum");
    for seed in seed..seed + cases {
        r.record(seed, by_parity(seed, case::<i64>, case::<bool>));
    }
    r
}

/// The extracted strategy passes the optimality checker.
pub fn extracted_strategy_is_optimal(seed: u64, cases: u64) -> SuiteReport {
    fn case<R: RandomOutcome>(seed: u64) -> Result<std::result::Result<(), String>> {
        let (g, st) = random_game::<R>(seed, GameShape::default())?;
        let s = strategy_of_selection_tree(g.tree(), &st, &|p| g.outcome(p))?;
        Ok(check(is_optimal(&g, &s), || "extracted strategy is not optimal".into()))
    }
    let mut r = SuiteReport::new("extracted strategy is optimal");
    for seed in seed..seed + cases {
        r.record(seed, by_parity(seed, case::<i64>, case::<bool>));
    }
    r
}

/// Largest strategy count of a game used in [`checker_vs_enumeration`].
pub const MAX_ENUMERATED_STRATEGIES: u128 = 200;

/// On games with at most [`MAX_ENUMERATED_STRATEGIES`] strategies, the
/// checker accepts exactly the strategies found optimal by enumeration.
/// Seeds whose game is too large are skipped, so `cases` counts games
/// actually checked.
pub fn checker_vs_enumeration(seed: u64, cases: u64, config: &OracleConfig) -> SuiteReport {
    fn case<R: RandomOutcome>(seed: u64, config: &OracleConfig) -> Result<Option<std::result::Result<(), String>>> {
        let spec = random_spec::<R>(seed, GameShape::default(), R::attaining_pairs());
        let (g, st) = spec.build::<R>()?;
        if count_strategies(g.tree()) > MAX_ENUMERATED_STRATEGIES {
            return Ok(None);
        }
        let e = optimal_by_enumeration(&g, config)?;
        for (s, &expected) in e.strategies.iter().zip(&e.optimal) {
            if is_optimal(&g, s) != expected {
                return Ok(Some(Err(format!(
                    "checker says {}, enumeration says {expected} for {s:?}",
                    !expected
                ))));
            }
        }
        let extracted = strategy_of_selection_tree(g.tree(), &st, &|p| g.outcome(p))?;
        if e.is_member(&extracted) != Some(true) {
            return Ok(Some(Err("extracted strategy missing from the optimal set".into())));
        }
        let optimal = optimal_outcome(&g)?;
        Ok(Some(check(e.optimal_outcomes() == vec![optimal.clone()], || {
            format!(
                "optimal strategies realize {:?}, optimal outcome {optimal}",
                e.optimal_outcomes()
            )
        })))
    }
    let mut r = SuiteReport::new("checker vs enumeration");
    let mut next = seed;
    // small games are common; the attempt cap only guards against a bad generator
    while r.cases < cases && next < seed + cases.saturating_mul(100) {
        let s = next;
        next += 1;
        let outcome = by_parity(s, |s| case::<i64>(s, config), |s| case::<bool>(s, config));
        match outcome {
            Ok(None) => continue,
            Ok(Some(v)) => r.record(s, Ok(v)),
            Err(e) => r.record(s, Err(e)),
        }
    }
    if r.cases < cases {
        r.failures.push(Failure {
            seed: next,
            detail: format!("only {} small enough games found", r.cases),
        });
    }
    r
}

fn attains<R: NamedOutcome>(q: &str, s: &str, moves: usize, domain: &[R]) -> Result<Attainment<String, R>> {
    let names: Vec<String> = (0..moves).map(|i| format!("m{i}")).collect();
    let phi: Quantifier<String, R> = R::quantifier(q, names.clone().into())?;
    let eps: SelectionFunction<String, R> = R::selection(s, names.into())?;
    attains_exhaustive(&eps, &phi, domain, DEFAULT_ATTAINMENT_BUDGET)
}

/// Exhaustive attainment: argmin/min and argmax/max over a three-element
/// chain, witness/exists over booleans, for 1 to 4 moves; and argmin/max
/// must fail with a witness valuation that really separates them.
pub fn attainment() -> SuiteReport {
    let mut r = SuiteReport::new("attainment");
    let chain: [i64; 3] = [0, 1, 2];
    for moves in 1..=4u64 {
        for (q, s) in [("min", "argmin"), ("max", "argmax")] {
            let res = attains(q, s, moves as usize, &chain);
            r.record(
                moves,
                res.map(|a| check(a.holds(), || format!("{s} does not attain {q} on {moves} moves: {a:?}"))),
            );
        }
        let res = attains("exists", "witness", moves as usize, &[false, true]);
        r.record(
            moves,
            res.map(|a| {
                check(a.holds(), || {
                    format!("witness does not attain exists on {moves} moves: {a:?}")
                })
            }),
        );
    }
    for moves in 2..=4u64 {
        let res = attains("max", "argmin", moves as usize, &chain).map(|a| match a {
            Attainment::Fails {
                witness,
                selected_value,
                quantifier_value,
                ..
            } => {
                let values: Vec<i64> = witness.iter().map(|(_, v)| *v).collect();
                let lo = *values.iter().min().expect("nonempty");
                let hi = *values.iter().max().expect("nonempty");
                check(selected_value == lo && quantifier_value == hi && lo != hi, || {
                    format!("witness {witness:?} does not separate argmin from max")
                })
            }
            Attainment::Holds { .. } => Err(format!("argmin reported to attain max on {moves} moves")),
        });
        r.record(moves, res);
    }
    r
}

/// The K-sequence value equals plain minimax on min/max games.
pub fn oracle_equivalence(seed: u64, cases: u64, config: &OracleConfig) -> SuiteReport {
    let mut r = SuiteReport::new("oracle equivalence");
    for seed in seed..seed + cases {
        let res = random_minmax_game(seed, GameShape::default()).and_then(|(g, _)| {
            let k = optimal_outcome(&g)?;
            let m = minimax_direct(&g, config)?;
            Ok(check(k == m, || format!("K-sequence {k}, minimax {m}")))
        });
        r.record(seed, res);
    }
    r
}

/// Shape of the random trees used by [`prune_properties`].
pub const PRUNE_SHAPE: GameShape = GameShape { depth: 5, branching: 4 };

fn has_empty_node(t: &MaterializedTree<u8>) -> bool {
    match t {
        MaterializedTree::Leaf => false,
        MaterializedTree::Node(b) => b.is_empty() || b.iter().any(|(_, s)| has_empty_node(s)),
    }
}

/// Pruning keeps exactly the paths, is idempotent, and leaves no empty
/// node behind unless the tree has no paths at all.
pub fn prune_properties(seed: u64, cases: u64) -> SuiteReport {
    let mut r = SuiteReport::new("prune properties");
    for seed in seed..seed + cases {
        let raw = random_tree(seed, PRUNE_SHAPE);
        let res = raw.to_tree().and_then(|t| {
            let once = prune(&t);
            let twice = prune(&once);
            let m1 = materialize(&once, PRUNE_SHAPE.depth)?;
            let m2 = materialize(&twice, PRUNE_SHAPE.depth)?;
            if m1 != m2 {
                return Ok(Err("prune is not idempotent".into()));
            }
            let before = paths_enumerate(&t);
            let after = paths_enumerate(&once);
            if before != after {
                return Ok(Err(format!(
                    "paths changed: {} before, {} after",
                    before.len(),
                    after.len()
                )));
            }
            let expect_empty = !has_path(&t);
            Ok(check(
                has_empty_node(&m1) == expect_empty && (!expect_empty || m1 == MaterializedTree::Node(vec![])),
                || "empty nodes left after pruning".into(),
            ))
        });
        r.record(seed, res);
    }
    r
}

/// Every suite with `cases` cases per randomized suite (a quarter of that
/// for the enumeration check), seeds starting at `config.seed`.
pub fn run_all(config: &OracleConfig, cases: u64) -> Vec<SuiteReport> {
    let seed = config.seed;
    vec![
        strategy_path_is_j_sequence_play(seed, cases),
        strategy_realizes_optimum(seed, cases),
        extracted_strategy_is_optimal(seed, cases),
        checker_vs_enumeration(seed, cases.div_ceil(4), config),
        attainment(),
        oracle_equivalence(seed, cases, config),
        prune_properties(seed, cases),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_budgets_fail_loudly() {
        let config = OracleConfig {
            max_strategies: 1,
            max_paths: 1,
            ..OracleConfig::default()
        };
        assert!(!checker_vs_enumeration(0, 5, &config).passed());
        assert!(!oracle_equivalence(0, 5, &config).passed());
    }

    #[test]
    fn suites_pass_on_a_few_seeds() {
        let config = OracleConfig {
            seed: 1000,
            ..OracleConfig::default()
        };
        for r in run_all(&config, 12) {
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0, "{r}");
        }
    }
}
