//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes and returns plain strings and numbers; failures come
//! back as text starting with `error:` so the page can show them as is.

use puzzle_notation::cube::{self, FaceletCube, Formula};
use puzzle_notation::maze::{generate_maze, Strategy};
use puzzle_notation::sudoku::{generate_puzzle, render_sudoku, SudokuGrid};
use wasm_bindgen::prelude::*;

fn or_error(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}

/// A random canonical scramble of `length` moves (1 to 5).
#[wasm_bindgen]
pub fn cube_scramble(seed: u32, length: u32) -> String {
    or_error(
        cube::random_scramble(seed.into(), length as usize)
            .map(|f| f.to_string())
            .map_err(|e| e.to_string()),
    )
}

/// Apply `formula` to a solved cube, draw the net and append an optimal
/// solution back to solved.
#[wasm_bindgen]
pub fn cube_apply(formula: &str) -> String {
    or_error((|| {
        let f = Formula::parse(formula).map_err(|e| e.to_string())?;
        let c = FaceletCube::solved().apply_formula(&f);
        let solution = match cube::solve(&c, cube::DEFAULT_MAX_DEPTH) {
            Ok(s) if s.is_empty() => "(already solved)".to_string(),
            Ok(s) => s.to_string(),
            Err(e) => e.to_string(),
        };
        Ok(format!(
            "{}\n\nfacelets: {}\noptimal:  {solution}",
            cube::render_cube_net(&c),
            c.encode()
        ))
    })())
}

/// A seeded maze, drawn with or without its shortest path.
#[wasm_bindgen]
pub fn maze(seed: u32, width: u32, height: u32, solved: bool) -> String {
    or_error((|| {
        let m = generate_maze(seed.into(), width as usize, height as usize)
            .map_err(|e| e.to_string())?;
        let path = if solved {
            Some(m.solve(Strategy::Bfs).map_err(|e| e.to_string())?)
        } else {
            None
        };
        m.render(path.as_ref()).map_err(|e| e.to_string())
    })())
}

/// An 81-character puzzle with `clues` givens and a unique solution.
#[wasm_bindgen]
pub fn sudoku_puzzle(seed: u32, clues: u32) -> String {
    or_error(
        generate_puzzle(seed.into(), clues as usize, true)
            .map(|(p, _)| p.format())
            .map_err(|e| e.to_string()),
    )
}

/// Draw `grid`, bracketing repeated digits, with a verdict against
/// `puzzle`. Blank or `.` cells in `grid` count as unfilled.
#[wasm_bindgen]
pub fn sudoku_check(puzzle: &str, grid: &str) -> String {
    or_error((|| {
        let clues = SudokuGrid::parse(puzzle.trim()).map_err(|e| format!("puzzle: {e}"))?;
        let cleaned: String = grid
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '.' { '0' } else { c })
            .collect();
        let g = SudokuGrid::parse(&cleaned).map_err(|e| format!("grid: {e}"))?;
        let violations = g.find_violations();
        let verdict = if !g.agrees_with(&clues) {
            "a given clue was changed".to_string()
        } else if g.is_solved() {
            "solved".to_string()
        } else if violations.is_empty() {
            format!("{} of 81 cells filled, no conflicts", g.filled())
        } else {
            format!("{} repeated digits", violations.len())
        };
        Ok(format!("{}\n\n{verdict}", render_sudoku(&g, &violations)))
    })())
}

/// The unique solution of `puzzle` as 81 digits.
#[wasm_bindgen]
pub fn sudoku_solve(puzzle: &str) -> String {
    or_error((|| {
        let g = SudokuGrid::parse(puzzle.trim()).map_err(|e| e.to_string())?;
        g.solve().map(|s| s.format()).map_err(|e| e.to_string())
    })())
}
