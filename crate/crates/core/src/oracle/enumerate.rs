use crate::error::{GameError, Result};
use crate::quantifier::{Outcome, Quantifier, QuantifierTree};
use crate::solver::{Game, Strategy};
use crate::tree::{AnnotatedTree, GameTree, Move};

use super::OracleConfig;

/// Number of strategies of `tree`: one per leaf, and at a node the number of
/// moves times the product over the children. Saturates at `u128::MAX`.
pub fn count_strategies<M: Move>(tree: &GameTree<M>) -> u128 {
    match tree {
        GameTree::Leaf => 1,
        GameTree::Node(n) => n.children().fold(n.moves().len() as u128, |acc, (_, t)| {
            acc.saturating_mul(count_strategies(&t))
        }),
    }
}

/// Every strategy of `tree`, ordered by root choice first and then by the
/// substrategies in move order.
pub fn enumerate_strategies<M: Move>(tree: &GameTree<M>, max: u64) -> Result<Vec<Strategy<M>>> {
    let needed = count_strategies(tree);
    if needed > max as u128 {
        return Err(GameError::BudgetExceeded {
            needed,
            limit: max as u128,
        });
    }
    fn go<M: Move>(tree: &GameTree<M>) -> Result<Vec<Strategy<M>>> {
        let GameTree::Node(n) = tree else {
            return Ok(vec![Strategy::Leaf]);
        };
        let mut combos: Vec<Vec<(M, Strategy<M>)>> = vec![Vec::new()];
        for (m, child) in n.children() {
            let subs = go(&child)?;
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    subs.iter().map(move |s| {
                        let mut next = prefix.clone();
                        next.push((m.clone(), s.clone()));
                        next
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for choice in n.moves() {
            for subs in &combos {
                out.push(Strategy::node(choice.clone(), subs.clone())?);
            }
        }
        Ok(out)
    }
    go(tree)
}

/// A game with every node built and every leaf evaluated.
enum Table<M, R> {
    Leaf(R),
    Node {
        moves: Vec<M>,
        quantifier: Quantifier<M, R>,
        children: Vec<Table<M, R>>,
    },
}

fn tabulate<M: Move, R: Outcome>(
    g: &Game<M, R>,
    tree: &GameTree<M>,
    qtree: &QuantifierTree<M, R>,
    path: &mut Vec<M>,
    leaves: &mut u64,
    limit: u64,
) -> Result<Table<M, R>> {
    match (tree, qtree) {
        (GameTree::Leaf, AnnotatedTree::Leaf) => {
            *leaves += 1;
            if *leaves > limit {
                return Err(GameError::BudgetExceeded {
                    needed: *leaves as u128,
                    limit: limit as u128,
                });
            }
            Ok(Table::Leaf(g.outcome(path)?))
        }
        (GameTree::Node(n), AnnotatedTree::Node(qn)) => {
            let mut children = Vec::with_capacity(n.moves().len());
            for m in n.moves() {
                path.push(m.clone());
                children.push(tabulate(g, &n.child(m)?, &qn.child(m)?, path, leaves, limit)?);
                path.pop();
            }
            Ok(Table::Node {
                moves: n.moves().to_vec(),
                quantifier: qn.annotation().clone(),
                children,
            })
        }
        _ => Err(GameError::ShapeMismatch(
            "quantifier tree does not fit the game tree".into(),
        )),
    }
}

/// The outcome reached by following `s` from this node, and whether every
/// node below satisfies its quantifier condition under `s`.
fn realize<M: Move, R: Outcome>(t: &Table<M, R>, s: &Strategy<M>) -> Result<(R, bool)> {
    match (t, s) {
        (Table::Leaf(v), Strategy::Leaf) => Ok((v.clone(), true)),
        (
            Table::Node {
                moves,
                quantifier,
                children,
            },
            Strategy::Node(sn),
        ) => {
            let mut values = Vec::with_capacity(moves.len());
            let mut all_ok = true;
            for (m, child) in moves.iter().zip(children) {
                let sub = sn.sub(m).ok_or_else(|| GameError::UnlistedMove(m.to_string()))?;
                let (v, ok) = realize(child, sub)?;
                values.push(v);
                all_ok &= ok;
            }
            let at = |x: &M| -> Result<R> {
                moves
                    .iter()
                    .position(|m| m == x)
                    .map(|i| values[i].clone())
                    .ok_or_else(|| GameError::OutOfDomainQuery(x.to_string()))
            };
            let realized = at(sn.choice())?;
            let here = quantifier.apply(&at)? == realized;
            Ok((realized, all_ok && here))
        }
        _ => Err(GameError::ShapeMismatch("strategy does not fit the game tree".into())),
    }
}

/// All strategies of a game with, for each, its realized outcome and
/// whether it is optimal.
#[derive(Clone, Debug)]
pub struct Enumeration<M, R> {
    pub strategies: Vec<Strategy<M>>,
    pub realized: Vec<R>,
    pub optimal: Vec<bool>,
}

impl<M: Move, R: Outcome> Enumeration<M, R> {
    pub fn optimal_strategies(&self) -> impl Iterator<Item = &Strategy<M>> {
        self.strategies
            .iter()
            .zip(&self.optimal)
            .filter(|(_, &o)| o)
            .map(|(s, _)| s)
    }

    /// Distinct realized outcomes of the optimal strategies, in order of
    /// first appearance.
    pub fn optimal_outcomes(&self) -> Vec<R> {
        let mut out: Vec<R> = Vec::new();
        for (v, &o) in self.realized.iter().zip(&self.optimal) {
            if o && !out.contains(v) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn is_member(&self, s: &Strategy<M>) -> Option<bool> {
        self.strategies.iter().position(|t| t == s).map(|i| self.optimal[i])
    }
}

/// Checks every strategy of `g` against the optimality conditions, node by
/// node, on a fully evaluated copy of the game.
pub fn optimal_by_enumeration<M: Move, R: Outcome>(g: &Game<M, R>, config: &OracleConfig) -> Result<Enumeration<M, R>> {
    let strategies = enumerate_strategies(g.tree(), config.max_strategies)?;
    let table = tabulate(g, g.tree(), g.qtree(), &mut Vec::new(), &mut 0, config.max_paths)?;
    let mut realized = Vec::with_capacity(strategies.len());
    let mut optimal = Vec::with_capacity(strategies.len());
    for s in &strategies {
        let (v, ok) = realize(&table, s)?;
        realized.push(v);
        optimal.push(ok);
    }
    Ok(Enumeration {
        strategies,
        realized,
        optimal,
    })
}
