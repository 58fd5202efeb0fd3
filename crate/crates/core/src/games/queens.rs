//! N-Queens as a one-player game: place `n` queens, one per move, and win
//! if no two of them attack each other.
//!
//! The default encoding places the queen of rank `k` at move `k`, choosing
//! among the columns not used so far. [`QueensEncoding::AllSquares`] instead
//! offers every unused square at every move; it has the same outcome but a
//! far larger tree and is meant for small boards.

use std::fmt;

use crate::error::{GameError, Result};
use crate::quantifier::Quantifier;
use crate::selection::{SelectionFunction, SelectionTree};
use crate::solver::Game;
use crate::tree::{AnnotatedTree, GameTree, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub col: u8,
    pub row: u8,
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}r{}", self.col, self.row)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QueensEncoding {
    #[default]
    PerRank,
    AllSquares,
}

/// Largest supported board; squares of an 8x8 board fit a 64-bit mask.
pub const MAX_BOARD: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueensPosition {
    n: u8,
    placed: Vec<Square>,
}

impl QueensPosition {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_BOARD {
            return Err(GameError::InvalidPath(format!(
                "board size {n} exceeds the maximum of {MAX_BOARD}"
            )));
        }
        Ok(QueensPosition {
            n: n as u8,
            placed: Vec::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    pub fn placed(&self) -> &[Square] {
        &self.placed
    }

    pub fn is_complete(&self) -> bool {
        self.placed.len() == self.size()
    }

    pub fn place(&self, sq: Square) -> Result<Self> {
        if sq.col >= self.n || sq.row >= self.n {
            return Err(GameError::InvalidPath(format!("{sq} is off the board")));
        }
        if self.is_complete() {
            return Err(GameError::InvalidPath(format!("{sq} placed after all queens")));
        }
        if self.placed.contains(&sq) {
            return Err(GameError::InvalidPath(format!("{sq} is already occupied")));
        }
        let mut next = self.clone();
        next.placed.push(sq);
        Ok(next)
    }

    pub fn no_attacks(&self) -> bool {
        let attack = |a: &Square, b: &Square| {
            let dc = (a.col as i32 - b.col as i32).abs();
            let dr = (a.row as i32 - b.row as i32).abs();
            a.col == b.col || a.row == b.row || dc == dr
        };
        self.placed
            .iter()
            .enumerate()
            .all(|(i, a)| self.placed[i + 1..].iter().all(|b| !attack(a, b)))
    }

    fn occupied_mask(&self) -> u64 {
        self.placed
            .iter()
            .fold(0, |m, s| m | 1 << (s.row as u64 * self.n as u64 + s.col as u64))
    }

    fn moves(&self, encoding: QueensEncoding) -> Vec<Square> {
        let n = self.n;
        match encoding {
            QueensEncoding::PerRank => {
                let row = self.placed.len() as u8;
                (0..n)
                    .filter(|&col| self.placed.iter().all(|s| s.col != col))
                    .map(|col| Square { col, row })
                    .collect()
            }
            QueensEncoding::AllSquares => (0..n)
                .flat_map(|row| (0..n).map(move |col| Square { col, row }))
                .filter(|sq| !self.placed.contains(sq))
                .collect(),
        }
    }
}

fn tree_from(pos: QueensPosition, encoding: QueensEncoding) -> GameTree<Square> {
    if pos.is_complete() {
        return GameTree::Leaf;
    }
    let mut node = Node::new(pos.moves(encoding), {
        let pos = pos.clone();
        move |sq| tree_from(pos.place(*sq).expect("forest called with a listed square"), encoding)
    })
    .expect("squares are distinct");
    if encoding == QueensEncoding::AllSquares {
        // the order of placement does not matter for the outcome
        node = node.with_key(pos.occupied_mask());
    }
    GameTree::Node(node)
}

/// `true` iff the placement along `path` is complete and no two queens attack.
pub fn outcome(n: usize, path: &[Square]) -> Result<bool> {
    let pos = path
        .iter()
        .try_fold(QueensPosition::new(n)?, |pos, sq| pos.place(*sq))?;
    if !pos.is_complete() {
        return Err(GameError::InvalidPath(format!(
            "{} of {n} queens placed",
            pos.placed().len()
        )));
    }
    Ok(pos.no_attacks())
}

/// The game with every node existential and every selection a witness.
/// `n = 0` gives the single-leaf game on the empty board.
pub fn nqueens_game(n: usize, encoding: QueensEncoding) -> Result<(Game<Square, bool>, SelectionTree<Square, bool>)> {
    let tree = tree_from(QueensPosition::new(n)?, encoding);
    let qtree = AnnotatedTree::follow(&tree, |_, moves| Quantifier::exists(moves.to_vec()));
    let st = AnnotatedTree::follow(&tree, |_, moves| SelectionFunction::witness(moves.to_vec()));
    Ok((Game::new(tree, move |p: &[Square]| outcome(n, p), qtree), st))
}
