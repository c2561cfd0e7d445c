use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use super::{Formula, Move};
use crate::rng;

/// Longest scramble drawn by default.
pub const MAX_SCRAMBLE_LEN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scramble length {length} outside 1..={cap}")]
pub struct ScrambleError {
    pub length: usize,
    pub cap: usize,
}

/// Draw a scramble of exactly `length` moves, `length` in `1..=5`.
///
/// Each move is uniform over the moves allowed after its predecessor: never
/// the same face twice in a row, and opposite faces only in `URFDBL` order.
pub fn random_scramble(seed: u64, length: usize) -> Result<Formula, ScrambleError> {
    random_scramble_capped(seed, length, MAX_SCRAMBLE_LEN)
}

pub fn random_scramble_capped(
    seed: u64,
    length: usize,
    cap: usize,
) -> Result<Formula, ScrambleError> {
    if length == 0 || length > cap {
        return Err(ScrambleError { length, cap });
    }
    Ok(scramble_from_rng(&mut rng::seeded(seed), length))
}

pub(crate) fn scramble_from_rng<R: Rng + ?Sized>(rng: &mut R, length: usize) -> Formula {
    let all: Vec<Move> = Move::all().collect();
    let mut out = Formula::empty();
    let mut prev: Option<Move> = None;
    for _ in 0..length {
        let choices: Vec<Move> = all
            .iter()
            .copied()
            .filter(|&m| prev.is_none_or(|p| p.may_precede(m)))
            .collect();
        let m = *choices.choose(rng).expect("at least 12 successors");
        out.push(m);
        prev = Some(m);
    }
    out
}
