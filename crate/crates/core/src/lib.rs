//! Text notations, solvers and scoring for three sparse-reward puzzles:
//! the Rubik's Cube, Sudoku and ASCII mazes.
//!
//! Each puzzle has an engine module (state type, codec, solver, generator),
//! [`corpus`] frames solved/unsolved pairs into training records,
//! [`markov`] is a character-level baseline language model, and [`eval`]
//! scores generated text as invalid, incorrect or correct.

pub mod corpus;
pub mod cube;
pub mod eval;
pub mod markov;
pub mod maze;
pub mod rng;
pub mod sudoku;
