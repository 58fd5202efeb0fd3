//! Sequential games whose players are described by quantifiers and
//! selection functions over history-dependent move trees.
//!
//! A [`GameTree`] lists the moves available at each node; what comes next
//! may depend on every move made so far. A [`Game`] adds an outcome for each
//! complete play and a [`Quantifier`] at each node. Folding the quantifiers
//! over the tree gives the optimal outcome ([`optimal_outcome`]); folding
//! selection functions gives an optimal play and, node by node, an optimal
//! [`Strategy`] ([`solve`]).
//!
//! ```
//! use hog_core::games::tictactoe_game;
//! use hog_core::optimal_outcome_memoized;
//!
//! let (game, _) = tictactoe_game();
//! assert_eq!(optimal_outcome_memoized(&game), Ok(0));
//! ```

pub mod error;
pub mod games;
pub mod oracle;
pub mod quantifier;
pub mod registry;
pub mod selection;
pub mod solver;
pub mod tree;

pub use error::{GameError, Result};
pub use quantifier::{
    k_product, k_sequence, Outcome, PathQuantifier, Quantifier, QuantifierKind, QuantifierTree, Valuation,
};
pub use registry::{Label, NamedOutcome};
pub use selection::{
    attains_exhaustive, j_product, j_sequence, overline_selection, overline_tree, tree_attains, Attainment,
    PathSelection, SelectionFunction, SelectionKind, SelectionTree, TreeAttainment,
};
pub use solver::{
    check_optimal, is_optimal, optimal_outcome, optimal_outcome_memoized, solve, solve_with, spath,
    strategy_of_selection_tree, Game, SolveOptions, SolveReport, Strategy, StrategyNode, Violation, ViolationKind,
};
pub use tree::{
    count_paths, is_valid_path, make_leaf, make_node, paths_enumerate, prune, AnnotatedNode, AnnotatedTree, GameTree,
    MaterializedTree, Move, Node, Path,
};
