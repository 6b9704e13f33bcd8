//! Text formats: game documents, solver results, strategies and DIMACS.

mod dimacs;
mod game_file;
mod result_file;

use std::fmt;

pub use dimacs::parse_dimacs;
pub use game_file::{parse_game, parse_game_with, serialize_game, GameFile};
pub use result_file::{parse_strategy, serialize_result};

/// Position of the offending token (1-based); line 0 means the whole document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
        }
    }
}

impl std::error::Error for ParseError {}

/// Characters that may not appear inside a vertex name or symbol.
pub(crate) fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !"(),{}|&=#".contains(c)
}
