//! Seeded generators for small games and trees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::games::explicit::{ExplicitGameSpec, SpecTree};
use crate::registry::NamedOutcome;
use crate::selection::SelectionTree;
use crate::solver::Game;
use crate::tree::MaterializedTree;

/// Size limits for generated trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameShape {
    pub depth: usize,
    pub branching: usize,
}

impl Default for GameShape {
    fn default() -> Self {
        GameShape { depth: 4, branching: 3 }
    }
}

/// Outcome types with a small range of random values.
pub trait RandomOutcome: NamedOutcome {
    fn sample(rng: &mut impl Rng) -> Self;
}

impl RandomOutcome for i64 {
    fn sample(rng: &mut impl Rng) -> Self {
        rng.gen_range(-3..=3)
    }
}

impl RandomOutcome for bool {
    fn sample(rng: &mut impl Rng) -> Self {
        rng.gen()
    }
}

const MOVE_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// A random explicit game. Internal nodes have 1 to `shape.branching`
/// moves drawn from a small pool in random order; below the root a node
/// becomes a leaf with probability 1/4, and always at `shape.depth`. Each
/// node gets a `(quantifier, selection)` pair drawn from `pairs`.
pub fn random_spec<R: RandomOutcome>(seed: u64, shape: GameShape, pairs: &[(&str, &str)]) -> ExplicitGameSpec {
    fn go<R: RandomOutcome>(rng: &mut ChaCha8Rng, depth: usize, shape: GameShape, pairs: &[(&str, &str)]) -> SpecTree {
        if depth == shape.depth || (depth > 0 && rng.gen_ratio(1, 4)) {
            return SpecTree::Leaf(R::sample(rng).to_label());
        }
        let k = rng.gen_range(1..=shape.branching.min(MOVE_NAMES.len()));
        let names: Vec<&str> = MOVE_NAMES.choose_multiple(rng, k).copied().collect();
        let (q, s) = *pairs.choose(rng).expect("at least one quantifier pair");
        let branches = names
            .into_iter()
            .map(|m| (m.to_string(), go::<R>(rng, depth + 1, shape, pairs)))
            .collect();
        SpecTree::Node {
            quantifier: q.to_string(),
            selection: s.to_string(),
            branches,
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ExplicitGameSpec {
        root: go::<R>(&mut rng, 0, shape, pairs),
    }
}

/// A random game whose selection functions attain its quantifiers node by
/// node.
pub fn random_game<R: RandomOutcome>(
    seed: u64,
    shape: GameShape,
) -> Result<(Game<String, R>, SelectionTree<String, R>)> {
    random_spec::<R>(seed, shape, R::attaining_pairs()).build()
}

/// A random integer game using only min and max.
pub fn random_minmax_game(seed: u64, shape: GameShape) -> Result<(Game<String, i64>, SelectionTree<String, i64>)> {
    random_spec::<i64>(seed, shape, &[("min", "argmin"), ("max", "argmax")]).build()
}

/// A random finite tree in which some internal nodes have no moves at all.
pub fn random_tree(seed: u64, shape: GameShape) -> MaterializedTree<u8> {
    fn go(rng: &mut ChaCha8Rng, depth: usize, shape: GameShape) -> MaterializedTree<u8> {
        if depth == shape.depth || (depth > 0 && rng.gen_ratio(1, 4)) {
            return MaterializedTree::Leaf;
        }
        if rng.gen_ratio(1, 6) {
            return MaterializedTree::Node(Vec::new());
        }
        let k = rng.gen_range(1..=shape.branching);
        let mut moves: Vec<u8> = (0..10).collect();
        moves.shuffle(rng);
        let branches = moves
            .into_iter()
            .take(k)
            .map(|m| (m, go(rng, depth + 1, shape)))
            .collect();
        MaterializedTree::Node(branches)
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    go(&mut rng, 0, shape)
}
