//! 9x9 Sudoku grids as 81-digit strings (`0` is blank), with a violation
//! scanner, a deterministic backtracking solver and a seeded generator.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("expected 81 digits, found {0} characters")]
    Length(usize),
    #[error("character {found:?} at position {position} is not a digit")]
    Digit { position: usize, found: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SudokuError {
    #[error("grid repeats a digit within a row, column or block")]
    Inconsistent,
    #[error("grid has no completion")]
    Unsolvable,
    #[error("clue count {0} outside 17..=80")]
    ClueRange(usize),
    #[error("could not reach a unique puzzle with {clues} clues after {attempts} attempts")]
    GenerationFailed { clues: usize, attempts: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UnitKind {
    Row,
    Column,
    Block,
}

/// A digit appearing more than once in one row, column or block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: UnitKind,
    pub index: usize,
    pub digit: u8,
    pub positions: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SudokuGrid {
    cells: [u8; 81],
}

/// Cell indices of unit `index` of the given kind, in reading order.
pub fn unit_cells(kind: UnitKind, index: usize) -> [usize; 9] {
    match kind {
        UnitKind::Row => std::array::from_fn(|i| index * 9 + i),
        UnitKind::Column => std::array::from_fn(|i| i * 9 + index),
        UnitKind::Block => {
            let (br, bc) = (index / 3 * 3, index % 3 * 3);
            std::array::from_fn(|i| (br + i / 3) * 9 + bc + i % 3)
        }
    }
}

fn block_of(cell: usize) -> usize {
    cell / 27 * 3 + cell % 9 / 3
}

impl SudokuGrid {
    pub fn empty() -> Self {
        SudokuGrid { cells: [0; 81] }
    }

    /// Panics if any cell is above 9.
    pub fn from_cells(cells: [u8; 81]) -> Self {
        assert!(cells.iter().all(|&d| d <= 9), "sudoku digits are 0..=9");
        SudokuGrid { cells }
    }

    pub fn cells(&self) -> &[u8; 81] {
        &self.cells
    }

    pub fn get(&self, cell: usize) -> u8 {
        self.cells[cell]
    }

    pub fn set(&mut self, cell: usize, digit: u8) {
        assert!(digit <= 9);
        self.cells[cell] = digit;
    }

    pub fn parse(text: &str) -> Result<SudokuGrid, GridError> {
        let n = text.chars().count();
        if n != 81 {
            return Err(GridError::Length(n));
        }
        let mut cells = [0u8; 81];
        for (position, c) in text.chars().enumerate() {
            cells[position] =
                c.to_digit(10)
                    .filter(|_| c.is_ascii_digit())
                    .ok_or(GridError::Digit { position, found: c })? as u8;
        }
        Ok(SudokuGrid { cells })
    }

    pub fn format(&self) -> String {
        self.cells.iter().map(|&d| char::from(b'0' + d)).collect()
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|&&d| d != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&d| d != 0)
    }

    pub fn is_consistent(&self) -> bool {
        self.find_violations().is_empty()
    }

    pub fn is_solved(&self) -> bool {
        self.is_complete() && self.is_consistent()
    }

    /// Every nonzero cell of `clues` holds the same digit here.
    pub fn agrees_with(&self, clues: &SudokuGrid) -> bool {
        self.cells
            .iter()
            .zip(clues.cells.iter())
            .all(|(&a, &c)| c == 0 || a == c)
    }

    /// One violation per (unit, digit) pair seen at least twice; rows first,
    /// then columns, then blocks, digits ascending within each unit.
    pub fn find_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for kind in [UnitKind::Row, UnitKind::Column, UnitKind::Block] {
            for index in 0..9 {
                let cells = unit_cells(kind, index);
                let mut seen: [Vec<usize>; 10] = Default::default();
                for &cell in &cells {
                    let d = self.cells[cell] as usize;
                    if d != 0 {
                        seen[d].push(cell);
                    }
                }
                for (digit, positions) in seen.into_iter().enumerate() {
                    if positions.len() >= 2 {
                        out.push(Violation {
                            kind,
                            index,
                            digit: digit as u8,
                            positions,
                        });
                    }
                }
            }
        }
        out
    }

    /// First completion under the fewest-candidates-first ordering.
    pub fn solve(&self) -> Result<SudokuGrid, SudokuError> {
        let mut state = Search::new(self).ok_or(SudokuError::Inconsistent)?;
        if state.fill(&mut |_, _| ()) {
            Ok(SudokuGrid { cells: state.cells })
        } else {
            Err(SudokuError::Unsolvable)
        }
    }

    /// Number of completions, stopping once `limit` are found. Inconsistent
    /// grids have none.
    pub fn count_solutions(&self, limit: usize) -> usize {
        let limit = limit.max(1);
        match Search::new(self) {
            Some(mut state) => {
                let mut count = 0;
                state.count(limit, &mut count);
                count
            }
            None => 0,
        }
    }
}

/// Bitmask backtracking state. Bit `d` set means digit `d` is used.
struct Search {
    cells: [u8; 81],
    rows: [u16; 9],
    cols: [u16; 9],
    blocks: [u16; 9],
}

impl Search {
    fn new(g: &SudokuGrid) -> Option<Search> {
        let mut s = Search {
            cells: g.cells,
            rows: [0; 9],
            cols: [0; 9],
            blocks: [0; 9],
        };
        for cell in 0..81 {
            let d = g.cells[cell];
            if d != 0 {
                let bit = 1u16 << d;
                let (r, c, b) = (cell / 9, cell % 9, block_of(cell));
                if (s.rows[r] | s.cols[c] | s.blocks[b]) & bit != 0 {
                    return None;
                }
                s.place(cell, d);
            }
        }
        Some(s)
    }

    fn place(&mut self, cell: usize, d: u8) {
        let bit = 1u16 << d;
        self.cells[cell] = d;
        self.rows[cell / 9] |= bit;
        self.cols[cell % 9] |= bit;
        self.blocks[block_of(cell)] |= bit;
    }

    fn clear(&mut self, cell: usize, d: u8) {
        let bit = !(1u16 << d);
        self.cells[cell] = 0;
        self.rows[cell / 9] &= bit;
        self.cols[cell % 9] &= bit;
        self.blocks[block_of(cell)] &= bit;
    }

    fn candidates(&self, cell: usize) -> u16 {
        !(self.rows[cell / 9] | self.cols[cell % 9] | self.blocks[block_of(cell)]) & 0b11_1111_1110
    }

    /// Blank with the fewest candidates, lowest index on ties.
    fn next_blank(&self) -> Option<(usize, u16)> {
        let mut best: Option<(usize, u16)> = None;
        for cell in 0..81 {
            if self.cells[cell] != 0 {
                continue;
            }
            let cand = self.candidates(cell);
            if best.is_none_or(|(_, b)| cand.count_ones() < b.count_ones()) {
                best = Some((cell, cand));
                if cand.count_ones() <= 1 {
                    break;
                }
            }
        }
        best
    }

    /// Depth-first fill; `order` may permute the candidate digit list.
    fn fill(&mut self, order: &mut dyn FnMut(usize, &mut Vec<u8>)) -> bool {
        let Some((cell, cand)) = self.next_blank() else {
            return true;
        };
        let mut digits: Vec<u8> = (1..=9).filter(|d| cand & (1 << d) != 0).collect();
        order(cell, &mut digits);
        for d in digits {
            self.place(cell, d);
            if self.fill(order) {
                return true;
            }
            self.clear(cell, d);
        }
        false
    }

    fn count(&mut self, limit: usize, found: &mut usize) {
        let Some((cell, cand)) = self.next_blank() else {
            *found += 1;
            return;
        };
        for d in 1..=9u8 {
            if cand & (1 << d) == 0 {
                continue;
            }
            self.place(cell, d);
            self.count(limit, found);
            self.clear(cell, d);
            if *found >= limit {
                return;
            }
        }
    }
}

fn random_solution<R: Rng + ?Sized>(rng: &mut R) -> SudokuGrid {
    let mut state = Search::new(&SudokuGrid::empty()).expect("empty grid is consistent");
    let filled = state.fill(&mut |_, digits| digits.shuffle(rng));
    debug_assert!(filled);
    SudokuGrid { cells: state.cells }
}

const GENERATION_ATTEMPTS: usize = 32;

/// Generate `(puzzle, solution)` with exactly `clues` givens.
///
/// A random solved grid is built by shuffled backtracking, then cells are
/// blanked in shuffled order. With `require_unique`, a removal that admits
/// a second completion is undone. Attempts that cannot get down to `clues`
/// restart from a fresh derived seed.
pub fn generate_puzzle(
    seed: u64,
    clues: usize,
    require_unique: bool,
) -> Result<(SudokuGrid, SudokuGrid), SudokuError> {
    if !(17..=80).contains(&clues) {
        return Err(SudokuError::ClueRange(clues));
    }
    for attempt in 0..GENERATION_ATTEMPTS {
        let mut rng = rng::seeded(rng::derive_seed(seed, attempt as u64));
        let solution = random_solution(&mut rng);
        let mut order: Vec<usize> = (0..81).collect();
        order.shuffle(&mut rng);
        let mut puzzle = solution;
        let mut remaining = 81;
        for cell in order {
            if remaining == clues {
                break;
            }
            let digit = puzzle.cells[cell];
            puzzle.cells[cell] = 0;
            if require_unique && puzzle.count_solutions(2) != 1 {
                puzzle.cells[cell] = digit;
            } else {
                remaining -= 1;
            }
        }
        if remaining == clues {
            return Ok((puzzle, solution));
        }
    }
    Err(SudokuError::GenerationFailed {
        clues,
        attempts: GENERATION_ATTEMPTS,
    })
}

/// Boxed 9x9 rendering. Blanks show as `.`; cells listed in `highlight`
/// are bracketed like `[5]`.
pub fn render_sudoku(g: &SudokuGrid, highlight: &[Violation]) -> String {
    let mut marked = [false; 81];
    for v in highlight {
        for &p in &v.positions {
            marked[p] = true;
        }
    }
    let rule = "+---------+---------+---------+";
    let mut out = String::new();
    for r in 0..9 {
        if r % 3 == 0 {
            out.push_str(rule);
            out.push('\n');
        }
        for c in 0..9 {
            if c % 3 == 0 {
                out.push('|');
            }
            let cell = r * 9 + c;
            let ch = match g.cells[cell] {
                0 => '.',
                d => char::from(b'0' + d),
            };
            if marked[cell] {
                out.push('[');
                out.push(ch);
                out.push(']');
            } else {
                out.push(' ');
                out.push(ch);
                out.push(' ');
            }
        }
        out.push_str("|\n");
    }
    out.push_str(rule);
    out
}

impl fmt::Display for SudokuGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for SudokuGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SudokuGrid({})", self.format())
    }
}

impl FromStr for SudokuGrid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SudokuGrid::parse(s)
    }
}
