//! Optimal IDA* solver over the 18 face turns.
//!
//! The heuristic is the larger of two admissible bounds: the misplaced
//! facelet count divided by the 20 facelets a single turn can move, and the
//! exact distance from a table of every state within [`TABLE_DEPTH`] moves
//! of solved (states outside the table are at least `TABLE_DEPTH + 1` away).

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use super::{FaceletCube, Formula, Move};

pub const DEFAULT_MAX_DEPTH: usize = 6;

/// Facelets displaced by one face turn: 8 on the turned face, 12 around it.
const FACELETS_PER_TURN: usize = 20;

const TABLE_DEPTH: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no solution within {0} moves")]
    DepthExceeded(usize),
}

fn near_solved_table() -> &'static HashMap<FaceletCube, u8> {
    static TABLE: OnceLock<HashMap<FaceletCube, u8>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let moves: Vec<Move> = Move::all().collect();
        let mut table = HashMap::new();
        let solved = FaceletCube::solved();
        table.insert(solved, 0);
        let mut frontier = vec![solved];
        for depth in 1..=TABLE_DEPTH {
            let mut next = Vec::new();
            for c in &frontier {
                for &m in &moves {
                    let n = c.apply_move(m);
                    if let std::collections::hash_map::Entry::Vacant(e) = table.entry(n) {
                        e.insert(depth);
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        table
    })
}

fn misplaced(c: &FaceletCube) -> usize {
    c.facelets()
        .iter()
        .enumerate()
        .filter(|&(i, &f)| f.index() != i / 9)
        .count()
}

fn lower_bound(c: &FaceletCube) -> usize {
    let by_count = misplaced(c).div_ceil(FACELETS_PER_TURN);
    let by_table = near_solved_table()
        .get(c)
        .map_or(TABLE_DEPTH as usize + 1, |&d| d as usize);
    by_count.max(by_table)
}

/// Find a minimal-length formula that solves `c`, searching at most
/// `max_depth` moves deep.
pub fn solve(c: &FaceletCube, max_depth: usize) -> Result<Formula, SolveError> {
    if c.is_solved() {
        return Ok(Formula::empty());
    }
    let moves: Vec<Move> = Move::all().collect();
    let mut path = Vec::with_capacity(max_depth);
    for bound in lower_bound(c)..=max_depth {
        if search(c, bound, None, &moves, &mut path) {
            return Ok(Formula::new(path));
        }
    }
    Err(SolveError::DepthExceeded(max_depth))
}

fn search(
    c: &FaceletCube,
    remaining: usize,
    prev: Option<Move>,
    moves: &[Move],
    path: &mut Vec<Move>,
) -> bool {
    if c.is_solved() {
        return true;
    }
    if lower_bound(c) > remaining {
        return false;
    }
    for &m in moves {
        if prev.is_some_and(|p| !p.may_precede(m)) {
            continue;
        }
        path.push(m);
        if search(&c.apply_move(m), remaining - 1, Some(m), moves, path) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{random_scramble, Face, Turn};

    #[test]
    fn solved_needs_nothing() {
        assert!(solve(&FaceletCube::solved(), 6).unwrap().is_empty());
    }

    #[test]
    fn single_turn_inverted() {
        let c = FaceletCube::solved().apply_move(Move::new(Face::R, Turn::Cw90));
        assert_eq!(solve(&c, 6).unwrap().to_string(), "R'");
    }

    #[test]
    fn depth_cap_reported() {
        let c = FaceletCube::solved().apply_formula(&"R U F".parse().unwrap());
        assert_eq!(solve(&c, 2), Err(SolveError::DepthExceeded(2)));
    }

    #[test]
    fn table_has_expected_sizes() {
        // Known counts of positions at distance 0..=4 in the half-turn metric.
        let table = near_solved_table();
        let mut counts = [0usize; 5];
        for &d in table.values() {
            counts[d as usize] += 1;
        }
        assert_eq!(counts, [1, 18, 243, 3240, 43239]);
    }

    #[test]
    fn solves_scrambles() {
        for seed in 0..200 {
            let len = (seed % 5) as usize + 1;
            let s = random_scramble(seed, len).unwrap();
            let c = FaceletCube::solved().apply_formula(&s);
            let sol = solve(&c, DEFAULT_MAX_DEPTH).unwrap();
            assert!(sol.len() <= len);
            assert!(c.apply_formula(&sol).is_solved());
        }
    }
}
