//! Selection functions `(X -> R) -> X`, the quantifiers they induce, and
//! their dependent product, which computes a play rather than a value.

use std::cell::RefCell;
use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};
use crate::quantifier::{cons, Outcome, PathFn, Quantifier, QuantifierKind, QuantifierTree, Valuation};
use crate::tree::{render_path, AnnotatedTree, GameTree, Move};

/// Default cap on the number of valuations [`attains_exhaustive`] may try.
pub const DEFAULT_ATTAINMENT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectionKind {
    Argmin,
    Argmax,
    Witness,
    Custom,
}

impl SelectionKind {
    pub fn name(self) -> &'static str {
        match self {
            SelectionKind::Argmin => "argmin",
            SelectionKind::Argmax => "argmax",
            SelectionKind::Witness => "witness",
            SelectionKind::Custom => "custom",
        }
    }
}

type SelectFn<M, R> = Arc<dyn Fn(&Valuation<'_, M, R>) -> Result<M> + Send + Sync>;

/// A selection function on a designated finite move list.
pub struct SelectionFunction<M, R> {
    moves: Arc<[M]>,
    kind: SelectionKind,
    select: SelectFn<M, R>,
}

impl<M, R> Clone for SelectionFunction<M, R> {
    fn clone(&self) -> Self {
        SelectionFunction {
            moves: self.moves.clone(),
            kind: self.kind,
            select: self.select.clone(),
        }
    }
}

impl<M: Move, R> fmt::Debug for SelectionFunction<M, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind.name(), self.moves)
    }
}

impl<M: Move, R: Outcome> SelectionFunction<M, R> {
    pub fn new<F>(moves: impl Into<Arc<[M]>>, select: F) -> Self
    where
        F: Fn(&Valuation<'_, M, R>) -> Result<M> + Send + Sync + 'static,
    {
        Self::with_kind(moves, SelectionKind::Custom, select)
    }

    fn with_kind<F>(moves: impl Into<Arc<[M]>>, kind: SelectionKind, select: F) -> Self
    where
        F: Fn(&Valuation<'_, M, R>) -> Result<M> + Send + Sync + 'static,
    {
        SelectionFunction {
            moves: moves.into(),
            kind,
            select: Arc::new(select),
        }
    }

    pub fn moves(&self) -> &[M] {
        &self.moves
    }

    pub fn kind(&self) -> SelectionKind {
        self.kind
    }

    /// Selects a move for `p`. A result outside the move list is an error.
    pub fn apply(&self, p: &dyn Fn(&M) -> Result<R>) -> Result<M> {
        self.apply_valuation(&Valuation::new(&self.moves, p))
    }

    pub fn apply_valuation(&self, p: &Valuation<'_, M, R>) -> Result<M> {
        let chosen = (self.select)(p)?;
        if !self.moves.contains(&chosen) {
            return Err(GameError::SelectionOutsideDomain(chosen.to_string()));
        }
        Ok(chosen)
    }
}

impl<M: Move, R: Outcome + Ord> SelectionFunction<M, R> {
    /// First move, in move-list order, at which the valuation is least.
    pub fn argmin(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, SelectionKind::Argmin, |p| {
            first_extremizer(p, |v, best| v < best)
        })
    }

    /// First move, in move-list order, at which the valuation is greatest.
    pub fn argmax(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, SelectionKind::Argmax, |p| {
            first_extremizer(p, |v, best| v > best)
        })
    }
}

fn first_extremizer<M: Move, R>(p: &Valuation<'_, M, R>, better: fn(&R, &R) -> bool) -> Result<M> {
    let mut best: Option<(&M, R)> = None;
    for m in p.moves() {
        let v = p.at(m)?;
        if best.as_ref().is_none_or(|(_, b)| better(&v, b)) {
            best = Some((m, v));
        }
    }
    best.map(|(m, _)| m.clone()).ok_or(GameError::EmptyDomain)
}

impl<M: Move> SelectionFunction<M, bool> {
    /// First move valued true; the first move if there is none.
    pub fn witness(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, SelectionKind::Witness, |p| {
            for m in p.moves() {
                if p.at(m)? {
                    return Ok(m.clone());
                }
            }
            p.moves().first().cloned().ok_or(GameError::EmptyDomain)
        })
    }
}

/// The quantifier `p ↦ p(ε(p))`.
pub fn overline_selection<M: Move, R: Outcome>(eps: &SelectionFunction<M, R>) -> Quantifier<M, R> {
    let eps = eps.clone();
    Quantifier::with_kind(eps.moves.clone(), QuantifierKind::Overline, move |p| {
        let chosen = eps.apply_valuation(p)?;
        p.at(&chosen)
    })
}

/// Result of an exhaustive attainment check.
#[derive(Clone, Debug, PartialEq)]
pub enum Attainment<M, R> {
    Holds {
        cases: u128,
    },
    /// `witness` is a valuation with `p(ε(p)) != φ(p)`.
    Fails {
        witness: Vec<(M, R)>,
        selected: M,
        selected_value: R,
        quantifier_value: R,
    },
}

impl<M, R> Attainment<M, R> {
    pub fn holds(&self) -> bool {
        matches!(self, Attainment::Holds { .. })
    }
}

/// Checks `p(ε(p)) = φ(p)` for every valuation `p : moves -> domain`.
pub fn attains_exhaustive<M: Move, R: Outcome>(
    eps: &SelectionFunction<M, R>,
    phi: &Quantifier<M, R>,
    domain: &[R],
    budget: u128,
) -> Result<Attainment<M, R>> {
    if eps.moves() != phi.moves() {
        return Err(GameError::ShapeMismatch(format!(
            "selection over {:?}, quantifier over {:?}",
            eps.moves(),
            phi.moves()
        )));
    }
    let moves = eps.moves();
    let cases = (domain.len() as u128)
        .checked_pow(moves.len() as u32)
        .unwrap_or(u128::MAX);
    if cases > budget {
        return Err(GameError::BudgetExceeded {
            needed: cases,
            limit: budget,
        });
    }
    if cases == 0 {
        return Ok(Attainment::Holds { cases });
    }
    let mut digits = vec![0usize; moves.len()];
    loop {
        let p = |m: &M| {
            let i = moves.iter().position(|k| k == m).expect("strict valuation");
            Ok(domain[digits[i]].clone())
        };
        let selected = eps.apply(&p)?;
        let selected_value = p(&selected)?;
        let quantifier_value = phi.apply(&p)?;
        if selected_value != quantifier_value {
            return Ok(Attainment::Fails {
                witness: moves
                    .iter()
                    .cloned()
                    .zip(digits.iter().map(|&d| domain[d].clone()))
                    .collect(),
                selected,
                selected_value,
                quantifier_value,
            });
        }
        // odometer, last move varies fastest
        let mut pos = moves.len();
        loop {
            if pos == 0 {
                return Ok(Attainment::Holds { cases });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < domain.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Selection tree: one selection function per node of a game tree.
pub type SelectionTree<M, R> = AnnotatedTree<M, SelectionFunction<M, R>>;

/// Node-wise `overline_selection`.
pub fn overline_tree<M: Move, R: Outcome>(st: &SelectionTree<M, R>) -> QuantifierTree<M, R> {
    st.map(overline_selection)
}

/// Result of checking attainment at every node of a finite tree.
#[derive(Clone, Debug, PartialEq)]
pub enum TreeAttainment<M, R> {
    Holds { nodes: u64 },
    Fails { node: Vec<M>, attainment: Attainment<M, R> },
}

impl<M, R> TreeAttainment<M, R> {
    pub fn holds(&self) -> bool {
        matches!(self, TreeAttainment::Holds { .. })
    }
}

/// Whether `st` attains `qt` at every node of `tree`, each node checked
/// exhaustively over `domain`.
pub fn tree_attains<M: Move, R: Outcome>(
    tree: &GameTree<M>,
    st: &SelectionTree<M, R>,
    qt: &QuantifierTree<M, R>,
    domain: &[R],
    budget: u128,
) -> Result<TreeAttainment<M, R>> {
    fn go<M: Move, R: Outcome>(
        tree: &GameTree<M>,
        st: &SelectionTree<M, R>,
        qt: &QuantifierTree<M, R>,
        domain: &[R],
        budget: u128,
        prefix: &mut Vec<M>,
        nodes: &mut u64,
    ) -> Result<Option<TreeAttainment<M, R>>> {
        match (tree, st, qt) {
            (GameTree::Leaf, AnnotatedTree::Leaf, AnnotatedTree::Leaf) => Ok(None),
            (GameTree::Node(n), AnnotatedTree::Node(s), AnnotatedTree::Node(q)) => {
                if n.moves() != s.moves() || n.moves() != q.moves() {
                    return Err(GameError::ShapeMismatch(format!(
                        "move lists differ at {}",
                        render_path(prefix)
                    )));
                }
                *nodes += 1;
                let local = attains_exhaustive(s.annotation(), q.annotation(), domain, budget)?;
                if !local.holds() {
                    return Ok(Some(TreeAttainment::Fails {
                        node: prefix.clone(),
                        attainment: local,
                    }));
                }
                for m in n.moves() {
                    prefix.push(m.clone());
                    let found = go(&n.child(m)?, &s.child(m)?, &q.child(m)?, domain, budget, prefix, nodes)?;
                    prefix.pop();
                    if found.is_some() {
                        return Ok(found);
                    }
                }
                Ok(None)
            }
            _ => Err(GameError::ShapeMismatch(format!(
                "leaf aligned with node at {}",
                render_path(prefix)
            ))),
        }
    }
    let mut nodes = 0;
    let found = go(tree, st, qt, domain, budget, &mut Vec::new(), &mut nodes)?;
    Ok(found.unwrap_or(TreeAttainment::Holds { nodes }))
}

type PathSelectionFn<M, R> = Arc<dyn Fn(&PathFn<'_, M, R>) -> Result<Vec<M>> + Send + Sync>;

/// A selection function on the paths of a tree.
pub struct PathSelection<M, R>(PathSelectionFn<M, R>);

impl<M, R> Clone for PathSelection<M, R> {
    fn clone(&self) -> Self {
        PathSelection(self.0.clone())
    }
}

impl<M: Move, R: Outcome> PathSelection<M, R> {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&PathFn<'_, M, R>) -> Result<Vec<M>> + Send + Sync + 'static,
    {
        PathSelection(Arc::new(f))
    }

    /// The selection of a leaf: always the empty path.
    pub fn leaf() -> Self {
        Self::new(|_| Ok(Vec::new()))
    }

    fn failing(err: GameError) -> Self {
        Self::new(move |_| Err(err.clone()))
    }

    pub fn apply(&self, q: &PathFn<'_, M, R>) -> Result<Vec<M>> {
        (self.0)(q)
    }
}

/// Dependent product of selection functions.
///
/// With `ν(x) = δ(x)(q_x)` and `x₀ = ε(λx. q_x(ν(x)))` the result is
/// `x₀ :: ν(x₀)`, where `q_x = λys. q(x :: ys)`. Each `ν(x)` is computed at
/// most once per application.
pub fn j_product<M, R, D>(eps: &SelectionFunction<M, R>, delta: D) -> PathSelection<M, R>
where
    M: Move,
    R: Outcome,
    D: Fn(&M) -> Result<PathSelection<M, R>> + Send + Sync + 'static,
{
    let eps = eps.clone();
    PathSelection::new(move |q| {
        let moves = eps.moves();
        let cache: RefCell<Vec<Option<Vec<M>>>> = RefCell::new(vec![None; moves.len()]);
        let nu = |x: &M| -> Result<Vec<M>> {
            let i = moves
                .iter()
                .position(|m| m == x)
                .ok_or_else(|| GameError::UnlistedMove(x.to_string()))?;
            if let Some(tail) = &cache.borrow()[i] {
                return Ok(tail.clone());
            }
            let tail = delta(x)?.apply(&|ys: &[M]| q(&cons(x, ys)))?;
            cache.borrow_mut()[i] = Some(tail.clone());
            Ok(tail)
        };
        let x0 = eps.apply(&|x: &M| {
            let tail = nu(x)?;
            q(&cons(x, &tail))
        })?;
        let tail = nu(&x0)?;
        Ok(cons(&x0, &tail))
    })
}

/// Folds a selection tree into a single selection function on paths.
pub fn j_sequence<M: Move, R: Outcome>(tree: &GameTree<M>, st: &SelectionTree<M, R>) -> PathSelection<M, R> {
    match (tree, st) {
        (GameTree::Leaf, AnnotatedTree::Leaf) => PathSelection::leaf(),
        (GameTree::Node(node), AnnotatedTree::Node(snode)) => {
            let eps = snode.annotation();
            if node.moves() != snode.moves() || eps.moves() != node.moves() {
                return PathSelection::failing(GameError::ShapeMismatch(format!(
                    "selection over {:?} at a node with moves {:?}",
                    eps.moves(),
                    node.moves()
                )));
            }
            let node = node.clone();
            let snode = snode.clone();
            j_product(eps, move |x| Ok(j_sequence(&node.child(x)?, &snode.child(x)?)))
        }
        (GameTree::Leaf, _) => PathSelection::failing(GameError::ShapeMismatch(
            "selection node aligned with a game-tree leaf".into(),
        )),
        (_, AnnotatedTree::Leaf) => PathSelection::failing(GameError::ShapeMismatch(
            "selection leaf aligned with a game-tree node".into(),
        )),
    }
}
