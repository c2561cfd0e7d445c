use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use super::tables::CLOCKWISE;
use super::{Face, Formula, Move};

pub const SOLVED_FACELETS: &str = "UUUUUUUUURRRRRRRRRFFFFFFFFFDDDDDDDDDBBBBBBBBBLLLLLLLLL";

/// Index of the center facelet within a face block.
const CENTER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceletError {
    #[error("expected 54 facelets, found {0}")]
    Length(usize),
    #[error("facelet {position} is {found:?}, not one of URFDBL")]
    Alphabet { position: usize, found: char },
    #[error("symbol {symbol} appears {count} times instead of 9")]
    Count { symbol: Face, count: usize },
    #[error("center of face {face} is not {face}")]
    Center { face: Face },
}

/// Cube state as 54 facelet symbols indexed U1..U9, R1..R9, F1..F9, D1..D9,
/// B1..B9, L1..L9. A symbol names the face whose center has that color.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceletCube {
    facelets: [Face; 54],
}

fn move_index(m: Move) -> usize {
    m.face.index() * 3 + m.turn.quarter_turns() - 1
}

/// Gather tables for all 18 moves, composed from the clockwise tables.
fn move_tables() -> &'static [[u8; 54]; 18] {
    static TABLES: OnceLock<[[u8; 54]; 18]> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut out = [[0u8; 54]; 18];
        for face in 0..6 {
            let cw = &CLOCKWISE[face];
            let mut acc: [u8; 54] = std::array::from_fn(|i| i as u8);
            for q in 0..3 {
                // new[i] = old[cw[i]] composed after acc.
                acc = std::array::from_fn(|i| acc[cw[i] as usize]);
                out[face * 3 + q] = acc;
            }
        }
        out
    })
}

impl FaceletCube {
    pub fn solved() -> Self {
        FaceletCube {
            facelets: std::array::from_fn(|i| Face::ALL[i / 9]),
        }
    }

    pub fn facelets(&self) -> &[Face; 54] {
        &self.facelets
    }

    /// The nine facelets of `face` in reading order.
    pub fn face(&self, face: Face) -> [Face; 9] {
        let base = face.index() * 9;
        std::array::from_fn(|i| self.facelets[base + i])
    }

    pub fn apply_move(&self, m: Move) -> FaceletCube {
        let table = &move_tables()[move_index(m)];
        FaceletCube {
            facelets: std::array::from_fn(|i| self.facelets[table[i] as usize]),
        }
    }

    pub fn apply_formula(&self, f: &Formula) -> FaceletCube {
        f.moves().iter().fold(*self, |c, &m| c.apply_move(m))
    }

    pub fn is_solved(&self) -> bool {
        self.facelets
            .iter()
            .enumerate()
            .all(|(i, &f)| f.index() == i / 9)
    }

    /// The 54-character facelet string.
    pub fn encode(&self) -> String {
        self.facelets.iter().map(|f| f.letter()).collect()
    }

    /// Parse and validate a 54-character facelet string.
    pub fn decode(text: &str) -> Result<FaceletCube, FaceletError> {
        let chars: Vec<char> = text.chars().collect();
        if chars.len() != 54 {
            return Err(FaceletError::Length(chars.len()));
        }
        let mut facelets = [Face::U; 54];
        for (i, &c) in chars.iter().enumerate() {
            facelets[i] = Face::from_letter(c).ok_or(FaceletError::Alphabet {
                position: i,
                found: c,
            })?;
        }
        for symbol in Face::ALL {
            let count = facelets.iter().filter(|&&f| f == symbol).count();
            if count != 9 {
                return Err(FaceletError::Count { symbol, count });
            }
        }
        for face in Face::ALL {
            if facelets[face.index() * 9 + CENTER] != face {
                return Err(FaceletError::Center { face });
            }
        }
        Ok(FaceletCube { facelets })
    }
}

impl Default for FaceletCube {
    fn default() -> Self {
        FaceletCube::solved()
    }
}

impl fmt::Display for FaceletCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for FaceletCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FaceletCube({})", self.encode())
    }
}

impl FromStr for FaceletCube {
    type Err = FaceletError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FaceletCube::decode(s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Turn;
    use super::*;

    fn mv(face: Face, turn: Turn) -> Move {
        Move::new(face, turn)
    }

    #[test]
    fn solved_encoding() {
        assert_eq!(FaceletCube::solved().encode(), SOLVED_FACELETS);
        assert!(FaceletCube::solved().is_solved());
        assert_eq!(
            FaceletCube::decode(SOLVED_FACELETS).unwrap(),
            FaceletCube::solved()
        );
    }

    #[test]
    fn decode_errors() {
        assert_eq!(
            FaceletCube::decode(&SOLVED_FACELETS[..53]),
            Err(FaceletError::Length(53))
        );
        let mut bad: Vec<char> = SOLVED_FACELETS.chars().collect();
        bad[10] = 'X';
        assert!(matches!(
            FaceletCube::decode(&bad.iter().collect::<String>()),
            Err(FaceletError::Alphabet {
                position: 10,
                found: 'X'
            })
        ));
        let mut swapped: Vec<char> = SOLVED_FACELETS.chars().collect();
        swapped.swap(4, 13);
        assert_eq!(
            FaceletCube::decode(&swapped.iter().collect::<String>()),
            Err(FaceletError::Center { face: Face::U })
        );
        let mut counted: Vec<char> = SOLVED_FACELETS.chars().collect();
        counted[0] = 'R';
        assert!(matches!(
            FaceletCube::decode(&counted.iter().collect::<String>()),
            Err(FaceletError::Count {
                symbol: Face::U,
                count: 8
            })
        ));
    }

    #[test]
    fn u_turn_keeps_u_block_and_cycles_top_rows() {
        let s = FaceletCube::solved()
            .apply_move(mv(Face::U, Turn::Cw90))
            .encode();
        assert_eq!(&s[0..9], "UUUUUUUUU");
        // Clockwise U seen from above: F top row comes from R, R from B,
        // B from L, L from F.
        assert_eq!(&s[9..12], "BBB");
        assert_eq!(&s[18..21], "RRR");
        assert_eq!(&s[36..39], "LLL");
        assert_eq!(&s[45..48], "FFF");
        assert_eq!(&s[12..18], "RRRRRR");
        assert_eq!(&s[27..36], "DDDDDDDDD");
    }

    #[test]
    fn inverse_pairs_and_order_four() {
        let solved = FaceletCube::solved();
        for m in Move::all() {
            assert_eq!(solved.apply_move(m).apply_move(m.inverse()), solved);
            let q = mv(m.face, Turn::Cw90);
            let four = (0..4).fold(solved, |c, _| c.apply_move(q));
            assert_eq!(four, solved);
        }
    }

    #[test]
    fn single_turn_is_not_solved() {
        assert!(!FaceletCube::solved()
            .apply_move(mv(Face::R, Turn::Cw90))
            .is_solved());
    }

    #[test]
    fn formula_application() {
        let solved = FaceletCube::solved();
        assert_eq!(solved.apply_formula(&Formula::empty()), solved);
        assert_eq!(solved.apply_formula(&"R R'".parse().unwrap()), solved);
        let f: Formula = "R U F2 D' B L2".parse().unwrap();
        assert_eq!(solved.apply_formula(&f).apply_formula(&f.inverse()), solved);
    }

    #[test]
    fn half_and_ccw_match_repeated_quarters() {
        let start = FaceletCube::solved().apply_formula(&"R U F' D2 B L".parse().unwrap());
        for face in Face::ALL {
            let q = mv(face, Turn::Cw90);
            assert_eq!(
                start.apply_move(mv(face, Turn::Half180)),
                start.apply_move(q).apply_move(q)
            );
            assert_eq!(
                start.apply_move(mv(face, Turn::Ccw90)),
                start.apply_move(q).apply_move(q).apply_move(q)
            );
        }
    }
}
