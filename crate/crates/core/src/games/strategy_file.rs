//! Text form of strategies, in the same s-expression style as game files:
//!
//! ```text
//! strategy := '(' 'leaf' ')' | '(' 'choice' move branch+ ')'
//! branch   := '(' move strategy ')'
//! ```
//!
//! Moves are written with their `Display` form and resolved against a game
//! tree when the file is loaded.

use std::fmt::{self, Write as _};

use super::sexp::{read_one, ParseError, Sexp};
use crate::error::{GameError, Result};
use crate::solver::Strategy;
use crate::tree::{render_path, GameTree, Move};

pub fn write_strategy<M: Move>(s: &Strategy<M>) -> String {
    fn go<M: Move>(s: &Strategy<M>, indent: usize, out: &mut String) -> fmt::Result {
        match s {
            Strategy::Leaf => write!(out, "(leaf)"),
            Strategy::Node(n) => {
                write!(out, "(choice {}", n.choice())?;
                for (m, sub) in n.subs() {
                    write!(out, "\n{:width$}({m} ", "", width = indent + 1)?;
                    go(sub, indent + 1, out)?;
                    out.push(')');
                }
                out.push(')');
                Ok(())
            }
        }
    }
    let mut out = String::new();
    go(s, 0, &mut out).expect("writing to a String");
    out.push('\n');
    out
}

/// Parses a strategy file; moves stay as names.
pub fn parse_strategy(text: &str) -> Result<Strategy<String>, ParseError> {
    fn go(e: &Sexp) -> Result<Strategy<String>, ParseError> {
        let Sexp::List(items, pos) = e else {
            return Err(ParseError::at(e.pos(), "expected `(leaf)` or `(choice ...)`"));
        };
        match items.first().and_then(Sexp::as_atom) {
            Some("leaf") if items.len() == 1 => Ok(Strategy::Leaf),
            Some("choice") if items.len() >= 3 => {
                let choice = items[1]
                    .as_atom()
                    .ok_or_else(|| ParseError::at(items[1].pos(), "chosen move must be an atom"))?;
                let mut subs = Vec::with_capacity(items.len() - 2);
                for b in &items[2..] {
                    let Sexp::List(parts, bpos) = b else {
                        return Err(ParseError::at(b.pos(), "expected `(move strategy)`"));
                    };
                    let [mv, sub] = parts.as_slice() else {
                        return Err(ParseError::at(*bpos, "expected `(move strategy)`"));
                    };
                    let name = mv
                        .as_atom()
                        .ok_or_else(|| ParseError::at(mv.pos(), "move name must be an atom"))?;
                    subs.push((name.to_string(), go(sub)?));
                }
                Strategy::node(choice.to_string(), subs).map_err(|e| match e {
                    GameError::UnlistedMove(m) => {
                        ParseError::at(items[1].pos(), format!("chosen move `{m}` has no branch"))
                    }
                    other => ParseError::at(*pos, other.to_string()),
                })
            }
            _ => Err(ParseError::at(*pos, "expected `(leaf)` or `(choice move branch+)`")),
        }
    }
    go(&read_one(text)?)
}

/// Matches a parsed strategy against `tree`: every node must list exactly
/// the tree's moves (in any order). The result follows the tree's move order.
pub fn resolve_strategy<M: Move>(tree: &GameTree<M>, raw: &Strategy<String>) -> Result<Strategy<M>> {
    fn go<M: Move>(tree: &GameTree<M>, raw: &Strategy<String>, prefix: &mut Vec<String>) -> Result<Strategy<M>> {
        match (tree, raw) {
            (GameTree::Leaf, Strategy::Leaf) => Ok(Strategy::Leaf),
            (GameTree::Node(n), Strategy::Node(s)) => {
                if s.subs().len() != n.moves().len() {
                    return Err(GameError::ShapeMismatch(format!(
                        "{} branches at {}, the game has {} moves",
                        s.subs().len(),
                        render_path(prefix),
                        n.moves().len()
                    )));
                }
                let mut choice = None;
                let mut subs = Vec::with_capacity(n.moves().len());
                for m in n.moves() {
                    let name = m.to_string();
                    let sub = s.sub(&name).ok_or_else(|| {
                        GameError::ShapeMismatch(format!("no branch for move `{name}` at {}", render_path(prefix)))
                    })?;
                    if *s.choice() == name {
                        choice = Some(m.clone());
                    }
                    prefix.push(name);
                    subs.push((m.clone(), go(&n.child(m)?, sub, prefix)?));
                    prefix.pop();
                }
                let choice = choice.ok_or_else(|| {
                    GameError::ShapeMismatch(format!(
                        "chosen move `{}` at {} is not available",
                        s.choice(),
                        render_path(prefix)
                    ))
                })?;
                Strategy::node(choice, subs)
            }
            (GameTree::Leaf, _) => Err(GameError::ShapeMismatch(format!(
                "strategy continues past the end of play at {}",
                render_path(prefix)
            ))),
            (_, Strategy::Leaf) => Err(GameError::ShapeMismatch(format!(
                "strategy stops before the end of play at {}",
                render_path(prefix)
            ))),
        }
    }
    go(tree, raw, &mut Vec::new())
}
