//! Small hand-written games in a leaf-labelled s-expression format:
//!
//! ```text
//! node    := '(' 'node' quantifier selection branch+ ')'
//! branch  := '(' move subtree ')'
//! subtree := node | leaf
//! leaf    := '(' 'leaf' label ')'
//! label   := integer | 'true' | 'false'
//! ```
//!
//! All labels of one game are integers or all are booleans. The outcome of a
//! play is the label of the leaf it reaches.

use std::fmt;
use std::sync::Arc;

use super::sexp::{read_one, ParseError, Pos, Sexp};
use crate::error::{GameError, Result};
use crate::quantifier::{Quantifier, QuantifierTree};
use crate::registry::{Label, NamedOutcome, QUANTIFIER_NAMES, SELECTION_NAMES};
use crate::selection::{SelectionFunction, SelectionTree};
use crate::solver::Game;
use crate::tree::{AnnotatedNode, AnnotatedTree, GameTree, MaterializedTree, Node};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecTree {
    Leaf(Label),
    Node {
        quantifier: String,
        selection: String,
        branches: Vec<(String, SpecTree)>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    Int,
    Bool,
}

impl LabelKind {
    fn of(label: Label) -> Self {
        match label {
            Label::Int(_) => LabelKind::Int,
            Label::Bool(_) => LabelKind::Bool,
        }
    }
}

/// A parsed explicit game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGameSpec {
    pub root: SpecTree,
}

struct Parser {
    labels: Option<(LabelKind, Pos)>,
    names: Vec<(String, Pos)>,
}

impl Parser {
    fn subtree(&mut self, e: &Sexp) -> Result<SpecTree, ParseError> {
        let Sexp::List(items, pos) = e else {
            return Err(ParseError::at(e.pos(), "expected `(node ...)` or `(leaf ...)`"));
        };
        match items.first().and_then(Sexp::as_atom) {
            Some("leaf") => self.leaf(items, *pos),
            Some("node") => self.node(items, *pos),
            _ => Err(ParseError::at(*pos, "expected `(node ...)` or `(leaf ...)`")),
        }
    }

    fn leaf(&mut self, items: &[Sexp], pos: Pos) -> Result<SpecTree, ParseError> {
        let [_, label] = items else {
            return Err(ParseError::at(pos, "a leaf takes exactly one label"));
        };
        let text = label
            .as_atom()
            .ok_or_else(|| ParseError::at(label.pos(), "label must be an integer, `true` or `false`"))?;
        let value = match text {
            "true" => Label::Bool(true),
            "false" => Label::Bool(false),
            t => Label::Int(
                t.parse()
                    .map_err(|_| ParseError::at(label.pos(), format!("bad label `{t}`")))?,
            ),
        };
        let kind = LabelKind::of(value);
        match self.labels {
            None => self.labels = Some((kind, label.pos())),
            Some((first, _)) if first != kind => {
                return Err(ParseError::at(
                    label.pos(),
                    "integer and boolean labels cannot be mixed in one game",
                ))
            }
            Some(_) => {}
        }
        Ok(SpecTree::Leaf(value))
    }

    fn node(&mut self, items: &[Sexp], pos: Pos) -> Result<SpecTree, ParseError> {
        if items.len() < 4 {
            return Err(ParseError::at(
                pos,
                "a node needs a quantifier, a selection and at least one branch",
            ));
        }
        let quantifier = self.name(&items[1], &QUANTIFIER_NAMES, "quantifier")?;
        let selection = self.name(&items[2], &SELECTION_NAMES, "selection function")?;
        let mut branches: Vec<(String, SpecTree)> = Vec::with_capacity(items.len() - 3);
        for b in &items[3..] {
            let Sexp::List(parts, bpos) = b else {
                return Err(ParseError::at(b.pos(), "expected `(move subtree)`"));
            };
            let [mv, sub] = parts.as_slice() else {
                return Err(ParseError::at(*bpos, "expected `(move subtree)`"));
            };
            let name = mv
                .as_atom()
                .ok_or_else(|| ParseError::at(mv.pos(), "move name must be an atom"))?;
            if branches.iter().any(|(n, _)| n == name) {
                return Err(ParseError::at(mv.pos(), format!("duplicate move `{name}`")));
            }
            branches.push((name.to_string(), self.subtree(sub)?));
        }
        Ok(SpecTree::Node {
            quantifier,
            selection,
            branches,
        })
    }

    fn name(&mut self, e: &Sexp, known: &[&str], what: &str) -> Result<String, ParseError> {
        let name = e
            .as_atom()
            .ok_or_else(|| ParseError::at(e.pos(), format!("expected a {what} name")))?;
        if !known.contains(&name) {
            return Err(ParseError::at(e.pos(), format!("unknown {what} `{name}`")));
        }
        self.names.push((name.to_string(), e.pos()));
        Ok(name.to_string())
    }
}

fn check_names<R: NamedOutcome>(names: &[(String, Pos)]) -> Result<(), ParseError> {
    let moves: Arc<[String]> = Vec::new().into();
    for (name, pos) in names {
        let ok = if QUANTIFIER_NAMES.contains(&name.as_str()) {
            R::quantifier(name, moves.clone()).is_ok()
        } else {
            R::selection(name, moves.clone()).is_ok()
        };
        if !ok {
            return Err(ParseError::at(
                *pos,
                format!("`{name}` needs {} labels", other_domain::<R>()),
            ));
        }
    }
    Ok(())
}

fn other_domain<R: NamedOutcome>() -> &'static str {
    if R::DOMAIN == "integer" {
        "boolean"
    } else {
        "integer"
    }
}

impl ExplicitGameSpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let expr = read_one(text)?;
        let mut parser = Parser {
            labels: None,
            names: Vec::new(),
        };
        let root = parser.subtree(&expr)?;
        match parser.labels {
            Some((LabelKind::Int, _)) => check_names::<i64>(&parser.names)?,
            Some((LabelKind::Bool, _)) => check_names::<bool>(&parser.names)?,
            None => unreachable!("every tree has a leaf"),
        }
        Ok(ExplicitGameSpec { root })
    }

    pub fn label_kind(&self) -> LabelKind {
        fn first(t: &SpecTree) -> LabelKind {
            match t {
                SpecTree::Leaf(l) => LabelKind::of(*l),
                SpecTree::Node { branches, .. } => first(&branches[0].1),
            }
        }
        first(&self.root)
    }

    /// The bare tree of moves.
    pub fn materialize(&self) -> MaterializedTree<String> {
        fn go(t: &SpecTree) -> MaterializedTree<String> {
            match t {
                SpecTree::Leaf(_) => MaterializedTree::Leaf,
                SpecTree::Node { branches, .. } => {
                    MaterializedTree::Node(branches.iter().map(|(m, s)| (m.clone(), go(s))).collect())
                }
            }
        }
        go(&self.root)
    }

    /// The game and its selection tree, with outcomes of type `R`.
    pub fn build<R: NamedOutcome>(&self) -> Result<(Game<String, R>, SelectionTree<String, R>)> {
        let root = Arc::new(Shared::from_spec(&self.root)?);
        let tree = root.game_tree()?;
        let qtree = root.quantifier_tree()?;
        let st = root.selection_tree()?;
        let lookup = root.clone();
        let game = Game::new(tree, move |path: &[String]| lookup.outcome(path), qtree);
        Ok((game, st))
    }
}

enum Shared<R> {
    Leaf(R),
    Node {
        moves: Arc<[String]>,
        quantifier: Quantifier<String, R>,
        selection: SelectionFunction<String, R>,
        children: Vec<Arc<Shared<R>>>,
    },
}

impl<R: NamedOutcome> Shared<R> {
    fn from_spec(t: &SpecTree) -> Result<Self> {
        match t {
            SpecTree::Leaf(l) => R::from_label(*l)
                .map(Shared::Leaf)
                .ok_or(GameError::UnsupportedForOutcome {
                    name: l.to_string(),
                    domain: R::DOMAIN,
                }),
            SpecTree::Node {
                quantifier,
                selection,
                branches,
            } => {
                let moves: Arc<[String]> = branches.iter().map(|(m, _)| m.clone()).collect();
                Ok(Shared::Node {
                    quantifier: R::quantifier(quantifier, moves.clone())?,
                    selection: R::selection(selection, moves.clone())?,
                    moves,
                    children: branches
                        .iter()
                        .map(|(_, s)| Shared::from_spec(s).map(Arc::new))
                        .collect::<Result<_>>()?,
                })
            }
        }
    }

    fn child(&self, m: &String) -> Option<&Arc<Shared<R>>> {
        match self {
            Shared::Leaf(_) => None,
            Shared::Node { moves, children, .. } => moves.iter().position(|k| k == m).map(|i| &children[i]),
        }
    }

    fn game_tree(self: &Arc<Self>) -> Result<GameTree<String>> {
        match &**self {
            Shared::Leaf(_) => Ok(GameTree::Leaf),
            Shared::Node { moves, .. } => {
                let this = self.clone();
                let node = Node::new(moves.to_vec(), move |m| {
                    this.child(m)
                        .expect("forest called with a listed move")
                        .game_tree()
                        .expect("validated when the root was built")
                })?;
                Ok(GameTree::Node(node))
            }
        }
    }

    fn quantifier_tree(self: &Arc<Self>) -> Result<QuantifierTree<String, R>> {
        match &**self {
            Shared::Leaf(_) => Ok(AnnotatedTree::Leaf),
            Shared::Node { moves, quantifier, .. } => {
                let this = self.clone();
                let node = AnnotatedNode::new(moves.to_vec(), quantifier.clone(), move |m| {
                    this.child(m)
                        .expect("forest called with a listed move")
                        .quantifier_tree()
                        .expect("validated when the root was built")
                })?;
                Ok(AnnotatedTree::Node(node))
            }
        }
    }

    fn selection_tree(self: &Arc<Self>) -> Result<SelectionTree<String, R>> {
        match &**self {
            Shared::Leaf(_) => Ok(AnnotatedTree::Leaf),
            Shared::Node { moves, selection, .. } => {
                let this = self.clone();
                let node = AnnotatedNode::new(moves.to_vec(), selection.clone(), move |m| {
                    this.child(m)
                        .expect("forest called with a listed move")
                        .selection_tree()
                        .expect("validated when the root was built")
                })?;
                Ok(AnnotatedTree::Node(node))
            }
        }
    }

    fn outcome(&self, path: &[String]) -> Result<R> {
        let mut current = self;
        for m in path {
            current = current
                .child(m)
                .ok_or_else(|| GameError::InvalidPath(format!("move `{m}` is not available")))?;
        }
        match current {
            Shared::Leaf(v) => Ok(v.clone()),
            Shared::Node { .. } => Err(GameError::InvalidPath("play ends before a leaf".into())),
        }
    }
}

impl fmt::Display for ExplicitGameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &SpecTree, indent: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                SpecTree::Leaf(l) => write!(f, "(leaf {l})"),
                SpecTree::Node {
                    quantifier,
                    selection,
                    branches,
                } => {
                    write!(f, "(node {quantifier} {selection}")?;
                    for (m, sub) in branches {
                        write!(f, "\n{:width$}({m} ", "", width = indent + 2)?;
                        go(sub, indent + 2, f)?;
                        write!(f, ")")?;
                    }
                    write!(f, ")")
                }
            }
        }
        go(&self.root, 0, f)?;
        writeln!(f)
    }
}

/// A parsed game together with its outcome type.
pub enum ExplicitGame {
    Int(Game<String, i64>, SelectionTree<String, i64>),
    Bool(Game<String, bool>, SelectionTree<String, bool>),
}

pub fn parse_explicit_game(text: &str) -> Result<ExplicitGame, ParseError> {
    let spec = ExplicitGameSpec::parse(text)?;
    let built = match spec.label_kind() {
        LabelKind::Int => spec.build::<i64>().map(|(g, s)| ExplicitGame::Int(g, s)),
        LabelKind::Bool => spec.build::<bool>().map(|(g, s)| ExplicitGame::Bool(g, s)),
    };
    // names and labels were checked while parsing
    built.map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::{attains_exhaustive, DEFAULT_ATTAINMENT_BUDGET};
    use crate::solver::{optimal_outcome, solve};

    pub(crate) const TABLE: &str = "
        (node min argmin
          (x1 (node max argmax (y1 (leaf 3)) (y2 (leaf 1))))
          (x2 (node max argmax (y1 (leaf 0)) (y2 (leaf 5)))))";

    #[test]
    fn table_game_solves() {
        let ExplicitGame::Int(g, st) = parse_explicit_game(TABLE).unwrap() else {
            panic!()
        };
        let r = solve(&g, &st).unwrap();
        assert_eq!(r.optimal_outcome, 3);
        assert_eq!(r.strategic_path, vec!["x1".to_string(), "y1".to_string()]);
    }

    #[test]
    fn single_leaf() {
        let ExplicitGame::Int(g, _) = parse_explicit_game("(leaf 7)").unwrap() else {
            panic!()
        };
        assert_eq!(optimal_outcome(&g), Ok(7));
    }

    #[test]
    fn mismatched_names_parse_but_do_not_attain() {
        let text = "(node min witness (a (leaf true)) (b (leaf false)))";
        let ExplicitGame::Bool(g, st) = parse_explicit_game(text).unwrap() else {
            panic!()
        };
        let q = g.qtree().as_node().unwrap().annotation().clone();
        let s = st.as_node().unwrap().annotation().clone();
        let res = attains_exhaustive(&s, &q, &[false, true], DEFAULT_ATTAINMENT_BUDGET).unwrap();
        assert!(!res.holds());
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("(node min argmin (a (leaf 1)) (a (leaf 2)))", "duplicate move"),
            ("(node median argmin (a (leaf 1)))", "unknown quantifier"),
            ("(node min pick (a (leaf 1)))", "unknown selection"),
            ("(node min argmin (a (leaf 1)) (b (leaf true)))", "cannot be mixed"),
            ("(node exists witness (a (leaf 1)))", "needs boolean labels"),
            ("(node min argmin)", "at least one branch"),
            ("(leaf x)", "bad label"),
            ("(node min argmin (a (leaf 1))", "unclosed"),
        ];
        for (text, needle) in cases {
            let err = parse_explicit_game(text)
                .err()
                .unwrap_or_else(|| panic!("{text} parsed"));
            assert!(err.message.contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn error_positions() {
        let err = ExplicitGameSpec::parse("(node min argmin\n  (a (leaf 1))\n  (a (leaf 2)))").unwrap_err();
        assert_eq!((err.line, err.column), (3, 4));
    }

    #[test]
    fn serialize_round_trip() {
        let spec = ExplicitGameSpec::parse(TABLE).unwrap();
        let again = ExplicitGameSpec::parse(&spec.to_string()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.materialize(), again.materialize());
    }

    #[test]
    fn outcome_of_invalid_path_is_an_error() {
        let ExplicitGame::Int(g, _) = parse_explicit_game(TABLE).unwrap() else {
            panic!()
        };
        assert!(g.outcome(&["x1".to_string()]).is_err());
        assert!(g.outcome(&["x3".to_string(), "y1".to_string()]).is_err());
    }
}
