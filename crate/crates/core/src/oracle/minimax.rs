use crate::error::{GameError, Result};
use crate::quantifier::{Outcome, QuantifierKind, QuantifierTree};
use crate::solver::Game;
use crate::tree::{AnnotatedTree, GameTree, Move};

use super::OracleConfig;

/// Plain minimax: the value of a node is the least or greatest value of its
/// children, according to the node's quantifier. Only min and max nodes are
/// accepted.
pub fn minimax_direct<M: Move, R: Outcome + Ord>(g: &Game<M, R>, config: &OracleConfig) -> Result<R> {
    struct Walk<'a, M, R> {
        game: &'a Game<M, R>,
        path: Vec<M>,
        leaves: u64,
        limit: u64,
    }

    impl<M: Move, R: Outcome + Ord> Walk<'_, M, R> {
        fn value(&mut self, tree: &GameTree<M>, qtree: &QuantifierTree<M, R>) -> Result<R> {
            match (tree, qtree) {
                (GameTree::Leaf, AnnotatedTree::Leaf) => {
                    self.leaves += 1;
                    if self.leaves > self.limit {
                        return Err(GameError::BudgetExceeded {
                            needed: self.leaves as u128,
                            limit: self.limit as u128,
                        });
                    }
                    self.game.outcome(&self.path)
                }
                (GameTree::Node(n), AnnotatedTree::Node(qn)) => {
                    let kind = qn.annotation().kind();
                    if !matches!(kind, QuantifierKind::Min | QuantifierKind::Max) {
                        return Err(GameError::UnsupportedQuantifier(kind.name().to_string()));
                    }
                    let mut best: Option<R> = None;
                    for m in n.moves() {
                        self.path.push(m.clone());
                        let v = self.value(&n.child(m)?, &qn.child(m)?)?;
                        self.path.pop();
                        best = Some(match best {
                            None => v,
                            Some(b) if kind == QuantifierKind::Min => b.min(v),
                            Some(b) => b.max(v),
                        });
                    }
                    best.ok_or(GameError::EmptyDomain)
                }
                _ => Err(GameError::ShapeMismatch(
                    "quantifier tree does not fit the game tree".into(),
                )),
            }
        }
    }

    Walk {
        game: g,
        path: Vec::new(),
        leaves: 0,
        limit: config.max_paths,
    }
    .value(g.tree(), g.qtree())
}
