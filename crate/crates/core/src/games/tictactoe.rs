//! Tic-Tac-Toe and Anti-Tic-Tac-Toe.
//!
//! Cells are numbered 0..8 row-major. X moves first. Outcomes are `-1` when
//! X has three in a row, `1` when O has, `0` otherwise; a play ends as soon
//! as someone wins or the board is full.

use std::fmt;

use crate::error::{GameError, Result};
use crate::quantifier::Quantifier;
use crate::selection::{SelectionFunction, SelectionTree};
use crate::solver::Game;
use crate::tree::{AnnotatedTree, GameTree, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(u8);

impl Cell {
    pub fn new(index: u8) -> Option<Self> {
        (index < 9).then_some(Cell(index))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    X,
    O,
}

impl Mark {
    fn other(self) -> Self {
        match self {
            Mark::X => Mark::O,
            Mark::O => Mark::X,
        }
    }
}

const LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TttPosition {
    board: [Option<Mark>; 9],
    to_move: Mark,
}

impl Default for TttPosition {
    fn default() -> Self {
        TttPosition {
            board: [None; 9],
            to_move: Mark::X,
        }
    }
}

impl TttPosition {
    pub fn to_move(&self) -> Mark {
        self.to_move
    }

    pub fn at(&self, cell: Cell) -> Option<Mark> {
        self.board[cell.index()]
    }

    pub fn play(&self, cell: Cell) -> Result<Self> {
        if self.board[cell.index()].is_some() {
            return Err(GameError::InvalidPath(format!("cell {cell} is occupied")));
        }
        if self.is_over() {
            return Err(GameError::InvalidPath(format!("move {cell} after the game ended")));
        }
        let mut next = *self;
        next.board[cell.index()] = Some(self.to_move);
        next.to_move = self.to_move.other();
        Ok(next)
    }

    pub fn from_moves(moves: &[Cell]) -> Result<Self> {
        moves.iter().try_fold(TttPosition::default(), |pos, c| pos.play(*c))
    }

    pub fn winner(&self) -> Option<Mark> {
        LINES.iter().find_map(|&[a, b, c]| match self.board[a] {
            Some(m) if self.board[b] == Some(m) && self.board[c] == Some(m) => Some(m),
            _ => None,
        })
    }

    pub fn is_full(&self) -> bool {
        self.board.iter().all(Option::is_some)
    }

    pub fn is_over(&self) -> bool {
        self.is_full() || self.winner().is_some()
    }

    pub fn empty_cells(&self) -> Vec<Cell> {
        (0..9u8)
            .filter(|&i| self.board[i as usize].is_none())
            .map(Cell)
            .collect()
    }

    /// `-1` if X won, `1` if O won, `0` otherwise.
    pub fn score(&self) -> i64 {
        match self.winner() {
            Some(Mark::X) => -1,
            Some(Mark::O) => 1,
            None => 0,
        }
    }

    /// Base-3 encoding of the board; it determines whose turn it is.
    pub fn key(&self) -> u64 {
        self.board.iter().fold(0, |acc, m| {
            acc * 3
                + match m {
                    None => 0,
                    Some(Mark::X) => 1,
                    Some(Mark::O) => 2,
                }
        })
    }
}

impl fmt::Display for TttPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..3 {
            let cells: Vec<String> = (0..3)
                .map(|col| {
                    let i = row * 3 + col;
                    match self.board[i] {
                        Some(Mark::X) => "X".to_string(),
                        Some(Mark::O) => "O".to_string(),
                        None => i.to_string(),
                    }
                })
                .collect();
            writeln!(f, " {}", cells.join(" | "))?;
            if row < 2 {
                writeln!(f, "---+---+---")?;
            }
        }
        Ok(())
    }
}

/// The move tree below `pos`. Nodes carry the board key for memoized
/// evaluation.
pub fn tree_from(pos: TttPosition) -> GameTree<Cell> {
    if pos.is_over() {
        return GameTree::Leaf;
    }
    let node = Node::new(pos.empty_cells(), move |c| {
        tree_from(pos.play(*c).expect("forest called with an empty cell"))
    })
    .expect("empty cells are distinct")
    .with_key(pos.key());
    GameTree::Node(node)
}

/// Outcome of a complete play.
pub fn outcome(path: &[Cell]) -> Result<i64> {
    let pos = TttPosition::from_moves(path)?;
    if !pos.is_over() {
        return Err(GameError::InvalidPath("play ends before the game is over".into()));
    }
    Ok(pos.score())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Standard,
    Anti,
}

fn build(variant: Variant) -> (Game<Cell, i64>, SelectionTree<Cell, i64>) {
    let tree = tree_from(TttPosition::default());
    // X plays at even depths; in the standard game X minimizes
    let minimizes = move |depth: usize| depth.is_multiple_of(2) == (variant == Variant::Standard);
    let qtree = AnnotatedTree::follow(&tree, move |h, moves| {
        if minimizes(h.len()) {
            Quantifier::min(moves.to_vec())
        } else {
            Quantifier::max(moves.to_vec())
        }
    });
    let st = AnnotatedTree::follow(&tree, move |h, moves| {
        if minimizes(h.len()) {
            SelectionFunction::argmin(moves.to_vec())
        } else {
            SelectionFunction::argmax(moves.to_vec())
        }
    });
    (Game::new(tree, outcome, qtree), st)
}

pub fn tictactoe_game() -> (Game<Cell, i64>, SelectionTree<Cell, i64>) {
    build(Variant::Standard)
}

/// Same rules and outcomes, quantifiers swapped: max at the root.
pub fn anti_tictactoe_game() -> (Game<Cell, i64>, SelectionTree<Cell, i64>) {
    build(Variant::Anti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantifier::QuantifierKind;

    fn cells(ix: &[u8]) -> Vec<Cell> {
        ix.iter().map(|&i| Cell(i)).collect()
    }

    #[test]
    fn root_and_first_level_branching() {
        let (g, _) = tictactoe_game();
        assert_eq!(g.tree().moves().len(), 9);
        for (_, child) in g.tree().as_node().unwrap().children() {
            assert_eq!(child.moves().len(), 8);
        }
    }

    #[test]
    fn root_quantifiers() {
        let (g, st) = tictactoe_game();
        assert_eq!(g.qtree().as_node().unwrap().annotation().kind(), QuantifierKind::Min);
        assert_eq!(st.as_node().unwrap().annotation().kind().name(), "argmin");
        let (a, ast) = anti_tictactoe_game();
        let root = a.qtree().as_node().unwrap();
        assert_eq!(root.annotation().kind(), QuantifierKind::Max);
        let below = root.child(&Cell(4)).unwrap();
        assert_eq!(below.as_node().unwrap().annotation().kind(), QuantifierKind::Min);
        assert_eq!(ast.as_node().unwrap().annotation().kind().name(), "argmax");
    }

    #[test]
    fn wins_end_the_play() {
        // X: 0 1 2 along the top row
        let pos = TttPosition::from_moves(&cells(&[0, 3, 1, 4, 2])).unwrap();
        assert_eq!(pos.winner(), Some(Mark::X));
        assert!(tree_from(pos).is_leaf());
        assert_eq!(outcome(&cells(&[0, 3, 1, 4, 2])), Ok(-1));
        assert_eq!(outcome(&cells(&[0, 3, 1, 4, 8, 5])), Ok(1));
        assert!(outcome(&cells(&[0, 3, 1, 4, 2, 5])).is_err());
        assert!(outcome(&cells(&[0, 0])).is_err());
        assert!(outcome(&cells(&[0])).is_err());
    }

    #[test]
    fn full_board_draw() {
        let draw = cells(&[0, 1, 2, 4, 3, 5, 7, 6, 8]);
        let pos = TttPosition::from_moves(&draw).unwrap();
        assert!(pos.is_full());
        assert_eq!(pos.winner(), None);
        assert_eq!(outcome(&draw), Ok(0));
    }

    #[test]
    fn keys_distinguish_boards() {
        let a = TttPosition::from_moves(&cells(&[0, 1])).unwrap();
        let b = TttPosition::from_moves(&cells(&[1, 0])).unwrap();
        let c = TttPosition::from_moves(&cells(&[0, 2])).unwrap();
        assert_ne!(a.key(), b.key());
        assert_ne!(a.key(), c.key());
        let d = TttPosition::from_moves(&cells(&[0, 1, 2, 3])).unwrap();
        let e = TttPosition::from_moves(&cells(&[2, 3, 0, 1])).unwrap();
        assert_eq!(d.key(), e.key());
    }

    #[test]
    fn board_rendering() {
        let pos = TttPosition::from_moves(&cells(&[4])).unwrap();
        let text = pos.to_string();
        assert!(text.contains(" 3 | X | 5"));
        assert_eq!(Cell::new(9), None);
    }
}
