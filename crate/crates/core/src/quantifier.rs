//! Quantifiers `(X -> R) -> R`, quantifier trees, and their dependent
//! product, which folds a quantifier tree into one quantifier over complete
//! plays.

use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};
use crate::tree::{AnnotatedTree, GameTree, Move};

/// Values usable as game outcomes.
pub trait Outcome: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {}

impl<T> Outcome for T where T: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {}

/// A local outcome function over a designated move list.
///
/// In strict mode (the default) querying a move outside the list is an
/// error, so a quantifier cannot observe anything but its own moves.
pub struct Valuation<'a, M, R> {
    moves: &'a [M],
    f: &'a dyn Fn(&M) -> Result<R>,
    strict: bool,
}

impl<'a, M: Move, R> Valuation<'a, M, R> {
    pub fn new(moves: &'a [M], f: &'a dyn Fn(&M) -> Result<R>) -> Self {
        Valuation { moves, f, strict: true }
    }

    pub fn unchecked(moves: &'a [M], f: &'a dyn Fn(&M) -> Result<R>) -> Self {
        Valuation {
            moves,
            f,
            strict: false,
        }
    }

    pub fn moves(&self) -> &'a [M] {
        self.moves
    }

    pub fn at(&self, m: &M) -> Result<R> {
        if self.strict && !self.moves.contains(m) {
            return Err(GameError::OutOfDomainQuery(m.to_string()));
        }
        (self.f)(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantifierKind {
    Min,
    Max,
    Exists,
    Forall,
    /// Induced by a selection function.
    Overline,
    Custom,
}

impl QuantifierKind {
    pub fn name(self) -> &'static str {
        match self {
            QuantifierKind::Min => "min",
            QuantifierKind::Max => "max",
            QuantifierKind::Exists => "exists",
            QuantifierKind::Forall => "forall",
            QuantifierKind::Overline => "overline",
            QuantifierKind::Custom => "custom",
        }
    }
}

type QuantifierFn<M, R> = Arc<dyn Fn(&Valuation<'_, M, R>) -> Result<R> + Send + Sync>;

/// A quantifier on a designated finite move list.
pub struct Quantifier<M, R> {
    moves: Arc<[M]>,
    kind: QuantifierKind,
    eval: QuantifierFn<M, R>,
}

impl<M, R> Clone for Quantifier<M, R> {
    fn clone(&self) -> Self {
        Quantifier {
            moves: self.moves.clone(),
            kind: self.kind,
            eval: self.eval.clone(),
        }
    }
}

impl<M: Move, R> fmt::Debug for Quantifier<M, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind.name(), self.moves)
    }
}

impl<M: Move, R: Outcome> Quantifier<M, R> {
    /// A custom quantifier.
    pub fn new<F>(moves: impl Into<Arc<[M]>>, eval: F) -> Self
    where
        F: Fn(&Valuation<'_, M, R>) -> Result<R> + Send + Sync + 'static,
    {
        Self::with_kind(moves, QuantifierKind::Custom, eval)
    }

    pub(crate) fn with_kind<F>(moves: impl Into<Arc<[M]>>, kind: QuantifierKind, eval: F) -> Self
    where
        F: Fn(&Valuation<'_, M, R>) -> Result<R> + Send + Sync + 'static,
    {
        Quantifier {
            moves: moves.into(),
            kind,
            eval: Arc::new(eval),
        }
    }

    pub fn moves(&self) -> &[M] {
        &self.moves
    }

    pub fn kind(&self) -> QuantifierKind {
        self.kind
    }

    /// Applies the quantifier to `p`, restricted to its own move list.
    pub fn apply(&self, p: &dyn Fn(&M) -> Result<R>) -> Result<R> {
        (self.eval)(&Valuation::new(&self.moves, p))
    }

    pub fn apply_valuation(&self, p: &Valuation<'_, M, R>) -> Result<R> {
        (self.eval)(p)
    }
}

impl<M: Move, R: Outcome + Ord> Quantifier<M, R> {
    /// Least value of the valuation. Applying it to an empty move list is an error.
    pub fn min(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, QuantifierKind::Min, |p| extremum(p, |v, best| v < best))
    }

    pub fn max(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, QuantifierKind::Max, |p| extremum(p, |v, best| v > best))
    }
}

fn extremum<M: Move, R: Clone>(p: &Valuation<'_, M, R>, better: fn(&R, &R) -> bool) -> Result<R> {
    let mut best: Option<R> = None;
    for m in p.moves() {
        let v = p.at(m)?;
        if best.as_ref().is_none_or(|b| better(&v, b)) {
            best = Some(v);
        }
    }
    best.ok_or(GameError::EmptyDomain)
}

impl<M: Move> Quantifier<M, bool> {
    /// True iff some move is valued true; false on no moves.
    pub fn exists(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, QuantifierKind::Exists, |p| {
            for m in p.moves() {
                if p.at(m)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
    }

    /// True iff every move is valued true; true on no moves.
    pub fn forall(moves: impl Into<Arc<[M]>>) -> Self {
        Self::with_kind(moves, QuantifierKind::Forall, |p| {
            for m in p.moves() {
                if !p.at(m)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }
}

/// Quantifier tree: one quantifier per node of a game tree.
pub type QuantifierTree<M, R> = AnnotatedTree<M, Quantifier<M, R>>;

/// Outcome function on paths (possibly of a subgame).
pub type PathFn<'a, M, R> = dyn Fn(&[M]) -> Result<R> + 'a;

type PathQuantifierFn<M, R> = Arc<dyn Fn(&PathFn<'_, M, R>) -> Result<R> + Send + Sync>;

/// A quantifier on the paths of a tree.
pub struct PathQuantifier<M, R>(PathQuantifierFn<M, R>);

impl<M, R> Clone for PathQuantifier<M, R> {
    fn clone(&self) -> Self {
        PathQuantifier(self.0.clone())
    }
}

impl<M: Move, R: Outcome> PathQuantifier<M, R> {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&PathFn<'_, M, R>) -> Result<R> + Send + Sync + 'static,
    {
        PathQuantifier(Arc::new(f))
    }

    /// The quantifier of a leaf: evaluate `q` at the empty path.
    pub fn leaf() -> Self {
        Self::new(|q| q(&[]))
    }

    fn failing(err: GameError) -> Self {
        Self::new(move |_| Err(err.clone()))
    }

    pub fn apply(&self, q: &PathFn<'_, M, R>) -> Result<R> {
        (self.0)(q)
    }
}

/// `x :: ys`
pub(crate) fn cons<M: Clone>(x: &M, ys: &[M]) -> Vec<M> {
    let mut path = Vec::with_capacity(ys.len() + 1);
    path.push(x.clone());
    path.extend_from_slice(ys);
    path
}

/// Dependent product: `q ↦ φ(λx. γ(x)(λys. q(x :: ys)))`.
pub fn k_product<M, R, G>(phi: &Quantifier<M, R>, gamma: G) -> PathQuantifier<M, R>
where
    M: Move,
    R: Outcome,
    G: Fn(&M) -> Result<PathQuantifier<M, R>> + Send + Sync + 'static,
{
    let phi = phi.clone();
    PathQuantifier::new(move |q| {
        phi.apply(&|x: &M| {
            let continuation = gamma(x)?;
            continuation.apply(&|ys: &[M]| q(&cons(x, ys)))
        })
    })
}

/// Folds a quantifier tree into a single quantifier on the paths of `tree`.
///
/// A leaf gives `λq. q<>`; a node `φ :: φf` gives
/// `k_product(φ, λx. k_sequence(φf(x)))`. Shape mismatches between `tree`
/// and `qtree` surface as errors when the result is applied.
pub fn k_sequence<M: Move, R: Outcome>(tree: &GameTree<M>, qtree: &QuantifierTree<M, R>) -> PathQuantifier<M, R> {
    match (tree, qtree) {
        (GameTree::Leaf, AnnotatedTree::Leaf) => PathQuantifier::leaf(),
        (GameTree::Node(node), AnnotatedTree::Node(qnode)) => {
            let phi = qnode.annotation();
            if node.moves() != qnode.moves() || phi.moves() != node.moves() {
                return PathQuantifier::failing(GameError::ShapeMismatch(format!(
                    "quantifier over {:?} at a node with moves {:?}",
                    phi.moves(),
                    node.moves()
                )));
            }
            let node = node.clone();
            let qnode = qnode.clone();
            k_product(phi, move |x| Ok(k_sequence(&node.child(x)?, &qnode.child(x)?)))
        }
        (GameTree::Leaf, _) => PathQuantifier::failing(GameError::ShapeMismatch(
            "quantifier node aligned with a game-tree leaf".into(),
        )),
        (_, AnnotatedTree::Leaf) => PathQuantifier::failing(GameError::ShapeMismatch(
            "quantifier leaf aligned with a game-tree node".into(),
        )),
    }
}
