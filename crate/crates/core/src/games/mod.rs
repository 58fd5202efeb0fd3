//! Concrete games and the text formats for games and strategies.

pub mod explicit;
pub mod queens;
pub mod sexp;
pub mod strategy_file;
pub mod tictactoe;

pub use explicit::{parse_explicit_game, ExplicitGame, ExplicitGameSpec, LabelKind, SpecTree};
pub use queens::{nqueens_game, QueensEncoding, QueensPosition, Square};
pub use sexp::ParseError;
pub use strategy_file::{parse_strategy, resolve_strategy, write_strategy};
pub use tictactoe::{anti_tictactoe_game, tictactoe_game, Cell, Mark, TttPosition};
