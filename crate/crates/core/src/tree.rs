//! Well-founded game trees, paths through them, and trees carrying
//! per-node structure.
//!
//! A [`GameTree`] is either a [`GameTree::Leaf`] (the play is over) or a node
//! listing the moves available at that position together with a *forest*: a
//! function producing the subtree reached by each listed move. Because the
//! forest is a function, the moves available later in a play may depend on
//! every move made so far, and large trees (Tic-Tac-Toe) are only ever built
//! on demand.
//!
//! Move order inside a node is significant. Enumerations, tie-breaking and
//! serialization all follow it.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{GameError, Result};

/// Values usable as moves.
pub trait Move: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> Move for T where T: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

/// A complete play: the moves from the root down to a leaf.
pub type Path<M> = Vec<M>;

type Forest<M> = Arc<dyn Fn(&M) -> GameTree<M> + Send + Sync>;

/// A well-founded tree of move lists.
pub enum GameTree<M> {
    Leaf,
    Node(Node<M>),
}

impl<M> Clone for GameTree<M> {
    fn clone(&self) -> Self {
        match self {
            GameTree::Leaf => GameTree::Leaf,
            GameTree::Node(n) => GameTree::Node(n.clone()),
        }
    }
}

/// An internal node: an ordered list of distinct moves and the forest of
/// subtrees indexed by them.
pub struct Node<M> {
    moves: Arc<[M]>,
    forest: Forest<M>,
    key: Option<u64>,
}

impl<M> Clone for Node<M> {
    fn clone(&self) -> Self {
        Node {
            moves: self.moves.clone(),
            forest: self.forest.clone(),
            key: self.key,
        }
    }
}

/// The tree with a single (empty) play.
pub fn make_leaf<M>() -> GameTree<M> {
    GameTree::Leaf
}

/// Builds a node. `forest` is only ever called with moves from `moves`.
pub fn make_node<M, F>(moves: Vec<M>, forest: F) -> Result<GameTree<M>>
where
    M: Move,
    F: Fn(&M) -> GameTree<M> + Send + Sync + 'static,
{
    Node::new(moves, forest).map(GameTree::Node)
}

impl<M: Move> Node<M> {
    pub fn new<F>(moves: Vec<M>, forest: F) -> Result<Self>
    where
        F: Fn(&M) -> GameTree<M> + Send + Sync + 'static,
    {
        check_distinct(&moves)?;
        Ok(Node {
            moves: moves.into(),
            forest: Arc::new(forest),
            key: None,
        })
    }

    /// Tags the node with a transposition key.
    ///
    /// The key must determine the entire subgame rooted here: the subtree,
    /// the quantifiers attached to it, and the outcome of every continuation.
    /// Only the memoized evaluator reads it.
    pub fn with_key(mut self, key: u64) -> Self {
        self.key = Some(key);
        self
    }

    pub fn moves(&self) -> &[M] {
        &self.moves
    }

    pub(crate) fn shared_moves(&self) -> Arc<[M]> {
        self.moves.clone()
    }

    pub fn key(&self) -> Option<u64> {
        self.key
    }

    pub fn is_listed(&self, m: &M) -> bool {
        self.moves.contains(m)
    }

    /// The subtree reached by playing `m`.
    pub fn child(&self, m: &M) -> Result<GameTree<M>> {
        if !self.is_listed(m) {
            return Err(GameError::UnlistedMove(m.to_string()));
        }
        Ok((self.forest)(m))
    }

    /// Caller guarantees `m` is listed.
    pub(crate) fn child_unchecked(&self, m: &M) -> GameTree<M> {
        (self.forest)(m)
    }

    pub fn children(&self) -> impl Iterator<Item = (&M, GameTree<M>)> + '_ {
        self.moves.iter().map(move |m| (m, (self.forest)(m)))
    }
}

pub(crate) fn check_distinct<M: Move>(moves: &[M]) -> Result<()> {
    let mut seen = HashSet::with_capacity(moves.len());
    for m in moves {
        if !seen.insert(m) {
            return Err(GameError::DuplicateMove(m.to_string()));
        }
    }
    Ok(())
}

impl<M: Move> GameTree<M> {
    pub fn is_leaf(&self) -> bool {
        matches!(self, GameTree::Leaf)
    }

    /// Moves at the root; empty for a leaf.
    pub fn moves(&self) -> &[M] {
        match self {
            GameTree::Leaf => &[],
            GameTree::Node(n) => n.moves(),
        }
    }

    pub fn as_node(&self) -> Option<&Node<M>> {
        match self {
            GameTree::Leaf => None,
            GameTree::Node(n) => Some(n),
        }
    }
}

impl<M: Move> fmt::Debug for GameTree<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameTree::Leaf => f.write_str("Leaf"),
            GameTree::Node(n) => f.debug_struct("Node").field("moves", &n.moves).finish_non_exhaustive(),
        }
    }
}

/// Whether `path` is a complete play of `tree`.
pub fn is_valid_path<M: Move>(tree: &GameTree<M>, path: &[M]) -> bool {
    let mut current = tree.clone();
    for m in path {
        match current {
            GameTree::Leaf => return false,
            GameTree::Node(n) => match n.child(m) {
                Ok(t) => current = t,
                Err(_) => return false,
            },
        }
    }
    current.is_leaf()
}

/// Calls `visit` on every path, in the order induced by the move lists.
pub fn for_each_path<M: Move>(tree: &GameTree<M>, visit: &mut dyn FnMut(&[M])) {
    fn go<M: Move>(tree: &GameTree<M>, prefix: &mut Vec<M>, visit: &mut dyn FnMut(&[M])) {
        match tree {
            GameTree::Leaf => visit(prefix),
            GameTree::Node(n) => {
                for (m, child) in n.children() {
                    prefix.push(m.clone());
                    go(&child, prefix, visit);
                    prefix.pop();
                }
            }
        }
    }
    go(tree, &mut Vec::new(), visit)
}

/// All paths of a finite tree, lexicographic in move-list order.
pub fn paths_enumerate<M: Move>(tree: &GameTree<M>) -> Vec<Path<M>> {
    let mut out = Vec::new();
    for_each_path(tree, &mut |p| out.push(p.to_vec()));
    out
}

pub fn count_paths<M: Move>(tree: &GameTree<M>) -> u64 {
    match tree {
        GameTree::Leaf => 1,
        GameTree::Node(n) => n.children().map(|(_, t)| count_paths(&t)).sum(),
    }
}

/// Whether the tree has at least one path, i.e. some leaf is reachable.
pub fn has_path<M: Move>(tree: &GameTree<M>) -> bool {
    match tree {
        GameTree::Leaf => true,
        GameTree::Node(n) => n.children().any(|(_, t)| has_path(&t)),
    }
}

/// The subgame reached by playing `prefix` from the root.
pub fn subtree_at<M: Move>(tree: &GameTree<M>, prefix: &[M]) -> Result<GameTree<M>> {
    let mut current = tree.clone();
    for (depth, m) in prefix.iter().enumerate() {
        current = match &current {
            GameTree::Leaf => {
                return Err(GameError::InvalidPrefix(format!(
                    "descends past a leaf at depth {depth} with move `{m}`"
                )))
            }
            GameTree::Node(n) => n
                .child(m)
                .map_err(|_| GameError::InvalidPrefix(format!("move `{m}` is not listed at depth {depth}")))?,
        };
    }
    Ok(current)
}

/// Removes every move whose subtree has no paths.
///
/// The result has exactly the paths of `tree`; if `tree` has any path, every
/// internal node of the result has a non-empty move list. A tree without
/// paths prunes to a node with no moves. Subtrees are pruned on demand.
pub fn prune<M: Move>(tree: &GameTree<M>) -> GameTree<M> {
    match tree {
        GameTree::Leaf => GameTree::Leaf,
        GameTree::Node(n) => {
            let kept: Vec<M> = n
                .children()
                .filter(|(_, t)| has_path(t))
                .map(|(m, _)| m.clone())
                .collect();
            let source = n.clone();
            GameTree::Node(Node {
                moves: kept.into(),
                forest: Arc::new(move |m| prune(&source.child_unchecked(m))),
                key: None,
            })
        }
    }
}

/// An explicit, fully built finite tree. Equality is structural and
/// sensitive to move order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MaterializedTree<M> {
    Leaf,
    Node(Vec<(M, MaterializedTree<M>)>),
}

impl<M: Move> MaterializedTree<M> {
    /// Forces `tree` down to `max_depth` levels; deeper trees are an error.
    pub fn from_tree(tree: &GameTree<M>, max_depth: usize) -> Result<Self> {
        match tree {
            GameTree::Leaf => Ok(MaterializedTree::Leaf),
            GameTree::Node(_) if max_depth == 0 => Err(GameError::DepthExceeded(max_depth)),
            GameTree::Node(n) => {
                let mut branches = Vec::with_capacity(n.moves().len());
                for (m, child) in n.children() {
                    let sub = MaterializedTree::from_tree(&child, max_depth - 1)
                        .map_err(|_| GameError::DepthExceeded(max_depth))?;
                    branches.push((m.clone(), sub));
                }
                Ok(MaterializedTree::Node(branches))
            }
        }
    }

    /// A lazy view of this tree.
    pub fn to_tree(&self) -> Result<GameTree<M>> {
        match self {
            MaterializedTree::Leaf => Ok(GameTree::Leaf),
            MaterializedTree::Node(branches) => {
                let moves: Vec<M> = branches.iter().map(|(m, _)| m.clone()).collect();
                check_distinct(&moves)?;
                let children = branches
                    .iter()
                    .map(|(_, sub)| sub.to_tree())
                    .collect::<Result<Vec<_>>>()?;
                let index = moves.clone();
                Ok(GameTree::Node(Node::new(moves, move |m| {
                    let i = index
                        .iter()
                        .position(|k| k == m)
                        .expect("forest called with a listed move");
                    children[i].clone()
                })?))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            MaterializedTree::Leaf => 0,
            MaterializedTree::Node(b) => 1 + b.iter().map(|(_, t)| t.depth()).max().unwrap_or(0),
        }
    }
}

/// Convenience for [`MaterializedTree::from_tree`].
pub fn materialize<M: Move>(tree: &GameTree<M>, max_depth: usize) -> Result<MaterializedTree<M>> {
    MaterializedTree::from_tree(tree, max_depth)
}

type AnnotatedForest<M, S> = Arc<dyn Fn(&M) -> AnnotatedTree<M, S> + Send + Sync>;

/// A tree shaped like a [`GameTree`] whose nodes carry a value of type `S`.
///
/// Quantifier trees and selection trees are instances of this type.
pub enum AnnotatedTree<M, S> {
    Leaf,
    Node(AnnotatedNode<M, S>),
}

pub struct AnnotatedNode<M, S> {
    moves: Arc<[M]>,
    annotation: S,
    forest: AnnotatedForest<M, S>,
}

impl<M, S: Clone> Clone for AnnotatedTree<M, S> {
    fn clone(&self) -> Self {
        match self {
            AnnotatedTree::Leaf => AnnotatedTree::Leaf,
            AnnotatedTree::Node(n) => AnnotatedTree::Node(n.clone()),
        }
    }
}

impl<M, S: Clone> Clone for AnnotatedNode<M, S> {
    fn clone(&self) -> Self {
        AnnotatedNode {
            moves: self.moves.clone(),
            annotation: self.annotation.clone(),
            forest: self.forest.clone(),
        }
    }
}

impl<M: Move, S> AnnotatedNode<M, S> {
    pub fn new<F>(moves: Vec<M>, annotation: S, forest: F) -> Result<Self>
    where
        F: Fn(&M) -> AnnotatedTree<M, S> + Send + Sync + 'static,
    {
        check_distinct(&moves)?;
        Ok(AnnotatedNode {
            moves: moves.into(),
            annotation,
            forest: Arc::new(forest),
        })
    }

    pub fn moves(&self) -> &[M] {
        &self.moves
    }

    pub fn annotation(&self) -> &S {
        &self.annotation
    }

    pub fn child(&self, m: &M) -> Result<AnnotatedTree<M, S>> {
        if !self.moves.contains(m) {
            return Err(GameError::UnlistedMove(m.to_string()));
        }
        Ok((self.forest)(m))
    }
}

impl<M: Move, S: Clone + Send + Sync + 'static> AnnotatedTree<M, S> {
    /// Annotates `tree` node by node. `annotate` receives the moves played so
    /// far and the node's move list.
    pub fn follow<F>(tree: &GameTree<M>, annotate: F) -> Self
    where
        F: Fn(&[M], &[M]) -> S + Send + Sync + 'static,
    {
        follow_from(tree.clone(), Vec::new(), Arc::new(annotate))
    }

    /// Applies `f` to every annotation, lazily.
    pub fn map<T, F>(&self, f: F) -> AnnotatedTree<M, T>
    where
        T: Clone + Send + Sync + 'static,
        F: Fn(&S) -> T + Send + Sync + 'static,
    {
        map_shared(self, Arc::new(f))
    }

    pub fn moves(&self) -> &[M] {
        match self {
            AnnotatedTree::Leaf => &[],
            AnnotatedTree::Node(n) => n.moves(),
        }
    }
}

impl<M: Move, S> AnnotatedTree<M, S> {
    pub fn as_node(&self) -> Option<&AnnotatedNode<M, S>> {
        match self {
            AnnotatedTree::Leaf => None,
            AnnotatedTree::Node(n) => Some(n),
        }
    }
}

type Annotator<M, S> = Arc<dyn Fn(&[M], &[M]) -> S + Send + Sync>;

fn follow_from<M: Move, S: Clone + Send + Sync + 'static>(
    tree: GameTree<M>,
    history: Vec<M>,
    annotate: Annotator<M, S>,
) -> AnnotatedTree<M, S> {
    match tree {
        GameTree::Leaf => AnnotatedTree::Leaf,
        GameTree::Node(n) => {
            let annotation = annotate(&history, n.moves());
            let moves = n.shared_moves();
            AnnotatedTree::Node(AnnotatedNode {
                moves,
                annotation,
                forest: Arc::new(move |m| {
                    let mut h = history.clone();
                    h.push(m.clone());
                    follow_from(n.child_unchecked(m), h, annotate.clone())
                }),
            })
        }
    }
}

fn map_shared<M: Move, S: Clone + Send + Sync + 'static, T: Clone + Send + Sync + 'static>(
    tree: &AnnotatedTree<M, S>,
    f: Arc<dyn Fn(&S) -> T + Send + Sync>,
) -> AnnotatedTree<M, T> {
    match tree {
        AnnotatedTree::Leaf => AnnotatedTree::Leaf,
        AnnotatedTree::Node(n) => {
            let source = n.clone();
            AnnotatedTree::Node(AnnotatedNode {
                moves: n.moves.clone(),
                annotation: f(&n.annotation),
                forest: Arc::new(move |m| map_shared(&(source.forest)(m), f.clone())),
            })
        }
    }
}

/// Checks that `annotated` has the shape of `tree` on every node, visiting at
/// most `max_nodes` nodes.
pub fn check_shape<M: Move, S>(tree: &GameTree<M>, annotated: &AnnotatedTree<M, S>, max_nodes: u64) -> Result<()> {
    fn go<M: Move, S>(
        tree: &GameTree<M>,
        annotated: &AnnotatedTree<M, S>,
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
        match (tree, annotated) {
            (GameTree::Leaf, AnnotatedTree::Leaf) => Ok(()),
            (GameTree::Node(n), AnnotatedTree::Node(a)) => {
                if n.moves() != a.moves() {
                    return Err(GameError::ShapeMismatch(format!(
                        "move lists differ at {}",
                        render_path(prefix)
                    )));
                }
                for m in n.moves() {
                    prefix.push(m.clone());
                    go(&n.child_unchecked(m), &a.child(m)?, prefix, visited, max_nodes)?;
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
    go(tree, annotated, &mut Vec::new(), &mut 0, max_nodes)
}

/// Renders a path as `<a b c>`; the empty path is `<>`.
pub fn render_path<M: fmt::Display>(path: &[M]) -> String {
    let parts: Vec<String> = path.iter().map(|m| m.to_string()).collect();
    format!("<{}>", parts.join(" "))
}
