//! Games, strategies, and the computation and checking of optimal strategies.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};
use crate::quantifier::{cons, k_sequence, Outcome, PathFn, QuantifierTree};
use crate::selection::{j_sequence, SelectionTree};
use crate::tree::{check_distinct, render_path, subtree_at, AnnotatedTree, GameTree, Move};

type SharedPathFn<M, R> = Arc<dyn Fn(&[M]) -> Result<R> + Send + Sync>;

/// A finite higher-order game: a tree of moves, an outcome for every
/// complete play, and a quantifier at every node.
pub struct Game<M, R> {
    tree: GameTree<M>,
    outcome: SharedPathFn<M, R>,
    qtree: QuantifierTree<M, R>,
}

impl<M, R> Clone for Game<M, R> {
    fn clone(&self) -> Self {
        Game {
            tree: self.tree.clone(),
            outcome: self.outcome.clone(),
            qtree: self.qtree.clone(),
        }
    }
}

impl<M: Move, R: Outcome> Game<M, R> {
    pub fn new<F>(tree: GameTree<M>, outcome: F, qtree: QuantifierTree<M, R>) -> Self
    where
        F: Fn(&[M]) -> Result<R> + Send + Sync + 'static,
    {
        Game {
            tree,
            outcome: Arc::new(outcome),
            qtree,
        }
    }

    pub fn tree(&self) -> &GameTree<M> {
        &self.tree
    }

    pub fn qtree(&self) -> &QuantifierTree<M, R> {
        &self.qtree
    }

    pub fn outcome(&self, path: &[M]) -> Result<R> {
        (self.outcome)(path)
    }

    /// Same tree and outcome function, different objectives.
    pub fn with_qtree(&self, qtree: QuantifierTree<M, R>) -> Self {
        Game {
            tree: self.tree.clone(),
            outcome: self.outcome.clone(),
            qtree,
        }
    }

    /// The subgame after `prefix`, with outcome `ys ↦ q(prefix ++ ys)`.
    pub fn subgame_at(&self, prefix: &[M]) -> Result<Self> {
        let tree = subtree_at(&self.tree, prefix)?;
        let mut qtree = self.qtree.clone();
        for m in prefix {
            qtree = match &qtree {
                AnnotatedTree::Node(n) => n.child(m)?,
                AnnotatedTree::Leaf => {
                    return Err(GameError::ShapeMismatch(
                        "quantifier tree ends before the prefix".into(),
                    ))
                }
            };
        }
        let base = self.outcome.clone();
        let prefix = prefix.to_vec();
        Ok(Game {
            tree,
            outcome: Arc::new(move |ys: &[M]| {
                let mut path = prefix.clone();
                path.extend_from_slice(ys);
                base(&path)
            }),
            qtree,
        })
    }

    /// Checks the quantifier tree's shape and evaluates the outcome on every
    /// path, visiting at most `max_nodes` nodes.
    pub fn validate(&self, max_nodes: u64) -> Result<()> {
        fn go<M: Move, R: Outcome>(
            g: &Game<M, R>,
            tree: &GameTree<M>,
            qtree: &QuantifierTree<M, R>,
            prefix: &mut Vec<M>,
            visited: &mut u64,
            max_nodes: u64,
        ) -> Result<()> {
            *visited += 1;
            if *visited > max_nodes {
                return Err(GameError::BudgetExceeded {
                    needed: u128::from(*visited),
                    limit: u128::from(max_nodes),
                });
            }
            match (tree, qtree) {
                (GameTree::Leaf, AnnotatedTree::Leaf) => g.outcome(prefix).map(|_| ()),
                (GameTree::Node(n), AnnotatedTree::Node(q)) => {
                    if n.moves() != q.moves() || q.annotation().moves() != n.moves() {
                        return Err(GameError::ShapeMismatch(format!(
                            "move lists differ at {}",
                            render_path(prefix)
                        )));
                    }
                    for m in n.moves() {
                        prefix.push(m.clone());
                        go(g, &n.child(m)?, &q.child(m)?, prefix, visited, max_nodes)?;
                        prefix.pop();
                    }
                    Ok(())
                }
                _ => Err(GameError::ShapeMismatch(format!(
                    "leaf aligned with node at {}",
                    render_path(prefix)
                ))),
            }
        }
        go(self, &self.tree, &self.qtree, &mut Vec::new(), &mut 0, max_nodes)
    }
}

/// `K-sequence(φt)(q)`.
pub fn optimal_outcome<M: Move, R: Outcome>(g: &Game<M, R>) -> Result<R> {
    k_sequence(&g.tree, &g.qtree).apply(&|p| g.outcome(p))
}

/// Like [`optimal_outcome`], but caches subgame values by the transposition
/// keys attached to tree nodes. Nodes without a key are evaluated directly.
pub fn optimal_outcome_memoized<M: Move, R: Outcome>(g: &Game<M, R>) -> Result<R> {
    fn go<M: Move, R: Outcome>(
        tree: &GameTree<M>,
        qtree: &QuantifierTree<M, R>,
        q: &PathFn<'_, M, R>,
        memo: &RefCell<HashMap<u64, R>>,
    ) -> Result<R> {
        match (tree, qtree) {
            (GameTree::Leaf, AnnotatedTree::Leaf) => q(&[]),
            (GameTree::Node(n), AnnotatedTree::Node(qn)) => {
                if let Some(v) = n.key().and_then(|k| memo.borrow().get(&k).cloned()) {
                    return Ok(v);
                }
                let phi = qn.annotation();
                if phi.moves() != n.moves() {
                    return Err(GameError::ShapeMismatch(format!(
                        "quantifier over {:?} at a node with moves {:?}",
                        phi.moves(),
                        n.moves()
                    )));
                }
                let v = phi.apply(&|x: &M| go(&n.child(x)?, &qn.child(x)?, &|ys: &[M]| q(&cons(x, ys)), memo))?;
                if let Some(k) = n.key() {
                    memo.borrow_mut().insert(k, v.clone());
                }
                Ok(v)
            }
            _ => Err(GameError::ShapeMismatch("leaf aligned with node".into())),
        }
    }
    go(&g.tree, &g.qtree, &|p| g.outcome(p), &RefCell::new(HashMap::new()))
}

/// A move chosen at every node of a tree, including nodes off the chosen
/// line of play.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Strategy<M> {
    Leaf,
    Node(StrategyNode<M>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrategyNode<M> {
    choice: M,
    subs: Vec<(M, Strategy<M>)>,
}

impl<M: Move> Strategy<M> {
    /// `choice` must be one of the moves in `subs`, which must be distinct.
    pub fn node(choice: M, subs: Vec<(M, Strategy<M>)>) -> Result<Self> {
        let moves: Vec<M> = subs.iter().map(|(m, _)| m.clone()).collect();
        check_distinct(&moves)?;
        if !moves.contains(&choice) {
            return Err(GameError::UnlistedMove(choice.to_string()));
        }
        Ok(Strategy::Node(StrategyNode { choice, subs }))
    }

    pub fn as_node(&self) -> Option<&StrategyNode<M>> {
        match self {
            Strategy::Leaf => None,
            Strategy::Node(n) => Some(n),
        }
    }

    pub fn node_count(&self) -> u64 {
        match self {
            Strategy::Leaf => 1,
            Strategy::Node(n) => 1 + n.subs.iter().map(|(_, s)| s.node_count()).sum::<u64>(),
        }
    }

    /// Whether this strategy has the shape of `tree`: a choice at every
    /// node and a substrategy for every listed move.
    pub fn fits(&self, tree: &GameTree<M>) -> bool {
        match (self, tree) {
            (Strategy::Leaf, GameTree::Leaf) => true,
            (Strategy::Node(s), GameTree::Node(n)) => {
                s.subs.len() == n.moves().len()
                    && s.subs
                        .iter()
                        .zip(n.moves())
                        .all(|((m, sub), listed)| m == listed && sub.fits(&n.child_unchecked(m)))
            }
            _ => false,
        }
    }
}

impl<M: Move> StrategyNode<M> {
    pub fn choice(&self) -> &M {
        &self.choice
    }

    pub fn subs(&self) -> &[(M, Strategy<M>)] {
        &self.subs
    }

    pub fn sub(&self, m: &M) -> Option<&Strategy<M>> {
        self.subs.iter().find(|(k, _)| k == m).map(|(_, s)| s)
    }
}

/// The play obtained by following the strategy's choices from the root.
pub fn spath<M: Move>(s: &Strategy<M>) -> Vec<M> {
    let mut path = Vec::new();
    let mut current = s;
    while let Strategy::Node(n) = current {
        path.push(n.choice.clone());
        current = n.sub(&n.choice).expect("choice has a substrategy");
    }
    path
}

/// The strategy computed from a selection tree: at each node the head of the
/// J-sequence of the subgame, and for every move the strategy of the
/// corresponding subgame.
pub fn strategy_of_selection_tree<M: Move, R: Outcome>(
    tree: &GameTree<M>,
    st: &SelectionTree<M, R>,
    q: &PathFn<'_, M, R>,
) -> Result<Strategy<M>> {
    match (tree, st) {
        (GameTree::Leaf, AnnotatedTree::Leaf) => Ok(Strategy::Leaf),
        (GameTree::Node(n), AnnotatedTree::Node(sn)) => {
            if n.moves().is_empty() {
                return Err(GameError::EmptyDomain);
            }
            let x0 = j_sequence(tree, st)
                .apply(q)?
                .into_iter()
                .next()
                .ok_or(GameError::EmptyDomain)?;
            let mut subs = Vec::with_capacity(n.moves().len());
            for x in n.moves() {
                let sub = strategy_of_selection_tree(&n.child(x)?, &sn.child(x)?, &|ys: &[M]| q(&cons(x, ys)))?;
                subs.push((x.clone(), sub));
            }
            Ok(Strategy::Node(StrategyNode { choice: x0, subs }))
        }
        _ => Err(GameError::ShapeMismatch(
            "selection tree does not fit the game tree".into(),
        )),
    }
}

/// Why a strategy fails to be optimal.
#[derive(Clone, Debug, PartialEq)]
pub enum ViolationKind<R> {
    /// The value realized by the chosen move differs from the node's
    /// quantifier applied to the values realized by every move.
    Local {
        realized: R,
        quantified: R,
    },
    /// The node has no moves, so no quantifier condition can hold there.
    EmptyNode,
    /// The quantifier failed on this node.
    Evaluation(GameError),
    Shape(String),
}

/// The first violation found, depth first in move-list order.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<M, R> {
    /// Moves leading from the root to the offending node.
    pub node: Vec<M>,
    pub kind: ViolationKind<R>,
}

impl<M: Move, R: Outcome> fmt::Display for Violation<M, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = render_path(&self.node);
        let via = if self.node.is_empty() {
            String::new()
        } else {
            format!(" (subgame condition fails at the root via {at})")
        };
        match &self.kind {
            ViolationKind::Local { realized, quantified } => write!(
                f,
                "local condition fails at node {at}: chosen move realizes {realized:?}, quantifier gives {quantified:?}{via}"
            ),
            ViolationKind::EmptyNode => write!(f, "node {at} has no moves{via}"),
            ViolationKind::Evaluation(e) => write!(f, "quantifier at node {at} failed: {e}{via}"),
            ViolationKind::Shape(s) => write!(f, "strategy does not fit the game at node {at}: {s}"),
        }
    }
}

/// Checks the optimality conditions at every node: the chosen move realizes
/// what the node's quantifier asks for, and the strategy is optimal in every
/// subgame.
pub fn check_optimal<M: Move, R: Outcome>(g: &Game<M, R>, s: &Strategy<M>) -> std::result::Result<(), Violation<M, R>> {
    fn go<M: Move, R: Outcome>(
        tree: &GameTree<M>,
        qtree: &QuantifierTree<M, R>,
        s: &Strategy<M>,
        q: &PathFn<'_, M, R>,
        prefix: &mut Vec<M>,
    ) -> std::result::Result<(), Violation<M, R>> {
        let violation = |prefix: &Vec<M>, kind| Violation {
            node: prefix.clone(),
            kind,
        };
        match (tree, qtree, s) {
            (GameTree::Leaf, AnnotatedTree::Leaf, Strategy::Leaf) => Ok(()),
            (GameTree::Node(n), AnnotatedTree::Node(_), _) if n.moves().is_empty() => {
                Err(violation(prefix, ViolationKind::EmptyNode))
            }
            (GameTree::Node(n), AnnotatedTree::Node(qn), Strategy::Node(sn)) => {
                let phi = qn.annotation();
                let sub_moves: Vec<&M> = sn.subs.iter().map(|(m, _)| m).collect();
                if qn.moves() != n.moves()
                    || phi.moves() != n.moves()
                    || sub_moves.len() != n.moves().len()
                    || sub_moves.iter().zip(n.moves()).any(|(a, b)| *a != b)
                {
                    return Err(violation(prefix, ViolationKind::Shape("move lists differ".into())));
                }
                for (x, sub) in &sn.subs {
                    let child = n
                        .child(x)
                        .map_err(|e| violation(prefix, ViolationKind::Evaluation(e)))?;
                    if child.as_node().is_some_and(|c| c.moves().is_empty()) {
                        let mut at = prefix.clone();
                        at.push(x.clone());
                        return Err(violation(&at, ViolationKind::EmptyNode));
                    }
                    if child.is_leaf() != matches!(sub, Strategy::Leaf) {
                        let what = if child.is_leaf() { "play ends" } else { "play continues" };
                        return Err(violation(
                            prefix,
                            ViolationKind::Shape(format!("{what} after {x}, the strategy disagrees")),
                        ));
                    }
                }
                let value = |x: &M| -> Result<R> {
                    let sub = sn.sub(x).ok_or_else(|| GameError::UnlistedMove(x.to_string()))?;
                    q(&cons(x, &spath(sub)))
                };
                let realized = value(&sn.choice).map_err(|e| violation(prefix, ViolationKind::Evaluation(e)))?;
                let quantified = phi
                    .apply(&value)
                    .map_err(|e| violation(prefix, ViolationKind::Evaluation(e)))?;
                if realized != quantified {
                    return Err(violation(prefix, ViolationKind::Local { realized, quantified }));
                }
                for (x, sub) in &sn.subs {
                    let child = n
                        .child(x)
                        .map_err(|e| violation(prefix, ViolationKind::Evaluation(e)))?;
                    let qchild = qn
                        .child(x)
                        .map_err(|e| violation(prefix, ViolationKind::Evaluation(e)))?;
                    prefix.push(x.clone());
                    go(&child, &qchild, sub, &|ys: &[M]| q(&cons(x, ys)), prefix)?;
                    prefix.pop();
                }
                Ok(())
            }
            _ => Err(violation(prefix, ViolationKind::Shape("leaf aligned with node".into()))),
        }
    }
    go(&g.tree, &g.qtree, s, &|p| g.outcome(p), &mut Vec::new())
}

pub fn is_optimal<M: Move, R: Outcome>(g: &Game<M, R>, s: &Strategy<M>) -> bool {
    check_optimal(g, s).is_ok()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Use transposition keys when computing the optimal outcome.
    pub memoize: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport<M, R> {
    pub optimal_outcome: R,
    pub strategy: Strategy<M>,
    pub strategic_path: Vec<M>,
    /// Outcome of the strategic path.
    pub realized_outcome: R,
}

impl<M, R: PartialEq> SolveReport<M, R> {
    /// Whether the strategic path achieves the optimal outcome.
    pub fn realizes_optimum(&self) -> bool {
        self.optimal_outcome == self.realized_outcome
    }
}

pub fn solve<M: Move, R: Outcome>(g: &Game<M, R>, st: &SelectionTree<M, R>) -> Result<SolveReport<M, R>> {
    solve_with(g, st, SolveOptions::default())
}

pub fn solve_with<M: Move, R: Outcome>(
    g: &Game<M, R>,
    st: &SelectionTree<M, R>,
    options: SolveOptions,
) -> Result<SolveReport<M, R>> {
    let optimal_outcome = if options.memoize {
        optimal_outcome_memoized(g)?
    } else {
        optimal_outcome(g)?
    };
    let strategy = strategy_of_selection_tree(&g.tree, st, &|p| g.outcome(p))?;
    let strategic_path = spath(&strategy);
    let realized_outcome = g.outcome(&strategic_path)?;
    Ok(SolveReport {
        optimal_outcome,
        strategy,
        strategic_path,
        realized_outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantifier::Quantifier;
    use crate::selection::SelectionFunction;
    use crate::tree::{is_valid_path, make_leaf, make_node};

    type M = &'static str;

    fn table_q(path: &[M]) -> Result<i64> {
        Ok(match path {
            ["x1", "y1"] => 3,
            ["x1", "y2"] => 1,
            ["x2", "y1"] => 0,
            ["x2", "y2"] => 5,
            _ => return Err(GameError::InvalidPath(format!("{path:?}"))),
        })
    }

    fn table_game() -> (Game<M, i64>, SelectionTree<M, i64>) {
        let tree = make_node(vec!["x1", "x2"], |_| {
            make_node(vec!["y1", "y2"], |_| make_leaf()).unwrap()
        })
        .unwrap();
        let qt = AnnotatedTree::follow(&tree, |h, m| {
            if h.is_empty() {
                Quantifier::min(m.to_vec())
            } else {
                Quantifier::max(m.to_vec())
            }
        });
        let st = AnnotatedTree::follow(&tree, |h, m| {
            if h.is_empty() {
                SelectionFunction::argmin(m.to_vec())
            } else {
                SelectionFunction::argmax(m.to_vec())
            }
        });
        (Game::new(tree, table_q, qt), st)
    }

    fn leaf_game() -> (Game<char, i64>, SelectionTree<char, i64>) {
        (
            Game::new(make_leaf(), |_| Ok(7), AnnotatedTree::Leaf),
            AnnotatedTree::Leaf,
        )
    }

    fn row(choice: M) -> Strategy<M> {
        Strategy::node(choice, vec![("y1", Strategy::Leaf), ("y2", Strategy::Leaf)]).unwrap()
    }

    #[test]
    fn leaf_game_solves_trivially() {
        let (g, st) = leaf_game();
        let report = solve(&g, &st).unwrap();
        assert_eq!(report.optimal_outcome, 7);
        assert!(report.strategic_path.is_empty());
        assert_eq!(report.strategy, Strategy::Leaf);
        assert!(is_optimal(&g, &Strategy::Leaf));
    }

    #[test]
    fn spath_examples() {
        assert!(spath::<char>(&Strategy::Leaf).is_empty());
        let s = Strategy::node('b', vec![('a', Strategy::Leaf), ('b', Strategy::Leaf)]).unwrap();
        assert_eq!(spath(&s), vec!['b']);
    }

    #[test]
    fn strategy_node_invariants() {
        assert!(matches!(
            Strategy::node('c', vec![('a', Strategy::Leaf)]),
            Err(GameError::UnlistedMove(_))
        ));
        assert!(matches!(
            Strategy::node('a', vec![('a', Strategy::Leaf), ('a', Strategy::Leaf)]),
            Err(GameError::DuplicateMove(_))
        ));
    }

    #[test]
    fn table_game_strategy() {
        let (g, st) = table_game();
        let s = strategy_of_selection_tree(g.tree(), &st, &table_q).unwrap();
        let expected = Strategy::node("x1", vec![("x1", row("y1")), ("x2", row("y2"))]).unwrap();
        assert_eq!(s, expected);
        assert!(s.fits(g.tree()));
        assert!(is_optimal(&g, &s));
        assert_eq!(optimal_outcome(&g), Ok(3));
        assert_eq!(optimal_outcome_memoized(&g), Ok(3));
    }

    #[test]
    fn forcing_the_other_row_is_not_optimal() {
        let (g, _) = table_game();
        let forced = Strategy::node("x2", vec![("x1", row("y1")), ("x2", row("y2"))]).unwrap();
        let v = check_optimal(&g, &forced).unwrap_err();
        assert!(v.node.is_empty());
        assert_eq!(
            v.kind,
            ViolationKind::Local {
                realized: 5,
                quantified: 3
            }
        );
    }

    #[test]
    fn suboptimal_reply_deep_in_the_tree() {
        let (g, _) = table_game();
        // x2 is the right choice against these replies, but y1 is a bad reply to x2
        let s = Strategy::node("x2", vec![("x1", row("y1")), ("x2", row("y1"))]).unwrap();
        let v = check_optimal(&g, &s).unwrap_err();
        assert_eq!(v.node, vec!["x2"]);
        assert!(v.to_string().contains("subgame condition"));
    }

    #[test]
    fn shape_mismatch_is_a_violation() {
        let (g, _) = table_game();
        let s = Strategy::node("x1", vec![("x1", Strategy::Leaf), ("x2", Strategy::Leaf)]).unwrap();
        assert!(!s.fits(g.tree()));
        assert!(matches!(
            check_optimal(&g, &s).unwrap_err().kind,
            ViolationKind::Shape(_)
        ));
    }

    #[test]
    fn empty_node_is_reported_not_a_crash() {
        let tree: GameTree<char> = make_node(vec!['a'], |_| make_node(vec![], |_| make_leaf()).unwrap()).unwrap();
        let qt = AnnotatedTree::follow(&tree, |_, m| Quantifier::<char, i64>::min(m.to_vec()));
        let st = AnnotatedTree::follow(&tree, |_, m| SelectionFunction::<char, i64>::argmin(m.to_vec()));
        let g = Game::new(tree.clone(), |_| Ok(0), qt);
        assert_eq!(optimal_outcome(&g), Err(GameError::EmptyDomain));
        assert_eq!(
            strategy_of_selection_tree(&tree, &st, &|_| Ok(0)),
            Err(GameError::EmptyDomain)
        );
        let s = Strategy::node('a', vec![('a', Strategy::Leaf)]).unwrap();
        assert_eq!(check_optimal(&g, &s).unwrap_err().kind, ViolationKind::EmptyNode);
    }

    #[test]
    fn subgame_curries_outcome() {
        let (g, _) = table_game();
        let sub = g.subgame_at(&["x2"]).unwrap();
        assert_eq!(sub.outcome(&["y2"]), Ok(5));
        assert_eq!(optimal_outcome(&sub), Ok(5));
        assert!(g.subgame_at(&["zz"]).is_err());
    }

    #[test]
    fn validate_walks_all_paths() {
        let (g, _) = table_game();
        assert!(g.validate(100).is_ok());
        assert!(matches!(g.validate(2), Err(GameError::BudgetExceeded { .. })));
        let broken = Game::new(
            g.tree().clone(),
            |_: &[M]| Err(GameError::InvalidPath("x".into())),
            g.qtree().clone(),
        );
        assert!(broken.validate(100).is_err());
    }

    #[test]
    fn report_fields_are_consistent() {
        let (g, st) = table_game();
        let r = solve_with(&g, &st, SolveOptions { memoize: true }).unwrap();
        assert_eq!(r.strategic_path, vec!["x1", "y1"]);
        assert!(is_valid_path(g.tree(), &r.strategic_path));
        assert_eq!(r.realized_outcome, 3);
        assert!(r.realizes_optimum());
    }
}
