use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Face, Move, Turn};

/// An unparseable move token. `position` is the 1-based token index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unparseable move token {token:?} at token {position}")]
pub struct SyntaxError {
    pub position: usize,
    pub token: String,
}

/// An ordered sequence of face turns, written as space-separated tokens
/// such as `R U' F2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Formula {
    moves: Vec<Move>,
}

impl Formula {
    pub fn new(moves: Vec<Move>) -> Self {
        Formula { moves }
    }

    pub fn empty() -> Self {
        Formula::default()
    }

    /// Parse whitespace-separated tokens matching `[URFDBL]['2]?`.
    ///
    /// Only the ASCII apostrophe is accepted as the counterclockwise marker.
    pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
        text.split_whitespace()
            .enumerate()
            .map(|(i, token)| {
                parse_token(token).ok_or_else(|| SyntaxError {
                    position: i + 1,
                    token: token.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Formula::new)
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    /// Reverse the sequence and invert each turn.
    pub fn inverse(&self) -> Formula {
        Formula::new(self.moves.iter().rev().map(|m| m.inverse()).collect())
    }
}

fn parse_token(token: &str) -> Option<Move> {
    let mut chars = token.chars();
    let face = Face::from_letter(chars.next()?)?;
    let turn = match (chars.next(), chars.next()) {
        (None, _) => Turn::Cw90,
        (Some('\''), None) => Turn::Ccw90,
        (Some('2'), None) => Turn::Half180,
        _ => return None,
    };
    Some(Move::new(face, turn))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

impl From<Vec<Move>> for Formula {
    fn from(moves: Vec<Move>) -> Self {
        Formula::new(moves)
    }
}

impl FromIterator<Move> for Formula {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        Formula::new(iter.into_iter().collect())
    }
}
