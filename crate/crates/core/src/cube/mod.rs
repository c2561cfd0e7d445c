//! 3x3x3 Rubik's Cube: facelet strings, move formulas, scrambles and an
//! optimal solver used to label training pairs.
//!
//! Facelets follow the Kociemba layout but faces are concatenated in
//! `URFDBL` order, so the solved cube encodes as nine `U`s, nine `R`s, and so
//! on through nine `L`s.

mod facelets;
mod formula;
mod render;
mod scramble;
mod solve;
mod tables;

use std::fmt;

pub use facelets::{FaceletCube, FaceletError, SOLVED_FACELETS};
pub use formula::{Formula, SyntaxError};
pub use render::render_cube_net;
pub use scramble::{random_scramble, random_scramble_capped, ScrambleError, MAX_SCRAMBLE_LEN};
pub use solve::{solve, SolveError, DEFAULT_MAX_DEPTH};

/// One of the six cube faces. The derived ordering is the `URFDBL` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face {
    U,
    R,
    F,
    D,
    B,
    L,
}

impl Face {
    pub const ALL: [Face; 6] = [Face::U, Face::R, Face::F, Face::D, Face::B, Face::L];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(idx: usize) -> Option<Face> {
        Self::ALL.get(idx).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Face::U => 'U',
            Face::R => 'R',
            Face::F => 'F',
            Face::D => 'D',
            Face::B => 'B',
            Face::L => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<Face> {
        Some(match c {
            'U' => Face::U,
            'R' => Face::R,
            'F' => Face::F,
            'D' => Face::D,
            'B' => Face::B,
            'L' => Face::L,
            _ => return None,
        })
    }

    pub fn opposite(self) -> Face {
        match self {
            Face::U => Face::D,
            Face::D => Face::U,
            Face::R => Face::L,
            Face::L => Face::R,
            Face::F => Face::B,
            Face::B => Face::F,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Turn {
    /// Quarter turn clockwise, written as the bare face letter.
    Cw90,
    /// Quarter turn counterclockwise, written with an apostrophe.
    Ccw90,
    /// Half turn, written with a trailing `2`.
    Half180,
}

impl Turn {
    pub const ALL: [Turn; 3] = [Turn::Cw90, Turn::Ccw90, Turn::Half180];

    pub fn inverse(self) -> Turn {
        match self {
            Turn::Cw90 => Turn::Ccw90,
            Turn::Ccw90 => Turn::Cw90,
            Turn::Half180 => Turn::Half180,
        }
    }

    /// Number of clockwise quarter turns this turn amounts to.
    pub fn quarter_turns(self) -> usize {
        match self {
            Turn::Cw90 => 1,
            Turn::Half180 => 2,
            Turn::Ccw90 => 3,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Turn::Cw90 => "",
            Turn::Ccw90 => "'",
            Turn::Half180 => "2",
        }
    }
}

/// A single face turn in the half-turn metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub face: Face,
    pub turn: Turn,
}

impl Move {
    pub const fn new(face: Face, turn: Turn) -> Self {
        Move { face, turn }
    }

    /// All 18 face turns, grouped by face in `URFDBL` order.
    pub fn all() -> impl Iterator<Item = Move> {
        Face::ALL
            .into_iter()
            .flat_map(|face| Turn::ALL.into_iter().map(move |turn| Move { face, turn }))
    }

    pub fn inverse(self) -> Move {
        Move {
            face: self.face,
            turn: self.turn.inverse(),
        }
    }

    /// Whether `next` may directly follow `self` in a canonical sequence.
    ///
    /// Two turns of the same face never follow each other, and turns of
    /// opposite faces (which commute) only appear in `URFDBL` order.
    pub fn may_precede(self, next: Move) -> bool {
        next.face != self.face && !(next.face == self.face.opposite() && next.face < self.face)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.face, self.turn.suffix())
    }
}
