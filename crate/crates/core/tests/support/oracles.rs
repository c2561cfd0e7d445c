//! Slow, direct reference implementations the library is checked against.

use std::collections::{HashMap, VecDeque};

use puzzle_notation::cube::{Face, FaceletCube};
use puzzle_notation::maze::{Maze, WALL_E, WALL_N, WALL_S, WALL_W};
use puzzle_notation::sudoku::SudokuGrid;

use super::cubie;

pub type Stickers = [u8; 54];

pub fn solved_stickers() -> Stickers {
    std::array::from_fn(|i| (i / 9) as u8)
}

pub fn stickers_of(c: &FaceletCube) -> Stickers {
    let f = c.facelets();
    std::array::from_fn(|i| f[i].index() as u8)
}

/// The 18 face turns as gather tables built from the geometric model:
/// one, two and three clockwise quarter turns of each face.
pub fn geometric_moves() -> Vec<[u8; 54]> {
    let mut out = Vec::new();
    for face in 0..6 {
        let q = cubie::clockwise_table(face);
        let mut t: [u8; 54] = std::array::from_fn(|i| i as u8);
        for _ in 0..3 {
            t = std::array::from_fn(|i| t[q[i] as usize]);
            out.push(t);
        }
    }
    out
}

pub fn gather(state: &Stickers, table: &[u8; 54]) -> Stickers {
    std::array::from_fn(|i| state[table[i] as usize])
}

/// Distance from solved of every state within `depth` face turns, by plain
/// breadth-first search with no move pruning.
pub fn cube_distances(depth: usize) -> HashMap<Stickers, usize> {
    let moves = geometric_moves();
    let mut dist = HashMap::new();
    let start = solved_stickers();
    dist.insert(start, 0);
    let mut frontier = vec![start];
    for d in 1..=depth {
        let mut next = Vec::new();
        for s in &frontier {
            for m in &moves {
                let t = gather(s, m);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(t) {
                    e.insert(d);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    dist
}

pub fn cube_from_stickers(s: &Stickers) -> FaceletCube {
    let text: String = s
        .iter()
        .map(|&v| Face::from_index(v as usize).unwrap().letter())
        .collect();
    FaceletCube::decode(&text).unwrap()
}

/// `(unit kind 0/1/2 for row/column/block, unit index, digit, cells)` for
/// every digit appearing more than once in a unit, found by scanning all
/// 27 units cell by cell.
pub fn scan_violations(g: &SudokuGrid) -> Vec<(u8, usize, u8, Vec<usize>)> {
    let mut out = Vec::new();
    for kind in 0..3u8 {
        for unit in 0..9 {
            let cells: Vec<usize> = (0..81)
                .filter(|&i| {
                    let (r, c) = (i / 9, i % 9);
                    match kind {
                        0 => r == unit,
                        1 => c == unit,
                        _ => (r / 3) * 3 + c / 3 == unit,
                    }
                })
                .collect();
            for digit in 1..=9u8 {
                let hits: Vec<usize> = cells
                    .iter()
                    .copied()
                    .filter(|&i| g.get(i) == digit)
                    .collect();
                if hits.len() > 1 {
                    out.push((kind, unit, digit, hits));
                }
            }
        }
    }
    out.sort();
    out
}

/// Every solution of `g`, up to `limit`, by trying digits cell by cell in
/// index order.
pub fn enumerate_sudoku(g: &SudokuGrid, limit: usize) -> Vec<SudokuGrid> {
    fn ok(g: &SudokuGrid, cell: usize, d: u8) -> bool {
        let (r, c) = (cell / 9, cell % 9);
        (0..9).all(|k| {
            g.get(r * 9 + k) != d
                && g.get(k * 9 + c) != d
                && g.get(((r / 3) * 3 + k / 3) * 9 + (c / 3) * 3 + k % 3) != d
        })
    }
    fn go(g: &mut SudokuGrid, out: &mut Vec<SudokuGrid>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let Some(cell) = (0..81).find(|&i| g.get(i) == 0) else {
            out.push(*g);
            return;
        };
        for d in 1..=9 {
            if ok(g, cell, d) {
                g.set(cell, d);
                go(g, out, limit);
                g.set(cell, 0);
            }
        }
    }
    let mut out = Vec::new();
    go(&mut g.clone(), &mut out, limit);
    out
}

fn open_neighbors(m: &Maze, (x, y): (usize, usize)) -> Vec<(usize, usize)> {
    let w = m.walls((x, y));
    let mut out = Vec::new();
    if w & WALL_N == 0 && y > 0 {
        out.push((x, y - 1));
    }
    if w & WALL_E == 0 && x + 1 < m.width() {
        out.push((x + 1, y));
    }
    if w & WALL_S == 0 && y + 1 < m.height() {
        out.push((x, y + 1));
    }
    if w & WALL_W == 0 && x > 0 {
        out.push((x - 1, y));
    }
    out
}

/// Length of the shortest entry-to-exit route over all simple paths.
pub fn exhaustive_min_path(m: &Maze) -> Option<usize> {
    fn go(
        m: &Maze,
        at: (usize, usize),
        len: usize,
        seen: &mut Vec<Vec<bool>>,
        best: &mut Option<usize>,
    ) {
        if at == m.exit() {
            *best = Some(best.map_or(len, |b| b.min(len)));
            return;
        }
        for n in open_neighbors(m, at) {
            if !seen[n.1][n.0] {
                seen[n.1][n.0] = true;
                go(m, n, len + 1, seen, best);
                seen[n.1][n.0] = false;
            }
        }
    }
    let mut seen = vec![vec![false; m.width()]; m.height()];
    let e = m.entry();
    seen[e.1][e.0] = true;
    let mut best = None;
    go(m, e, 0, &mut seen, &mut best);
    best
}

/// A perfect maze has exactly `cells - 1` open internal edges, every one
/// recorded on both sides, and all cells connected.
pub fn is_spanning_tree(m: &Maze) -> bool {
    let (w, h) = (m.width(), m.height());
    let mut edges = 0;
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                let a = m.walls((x, y)) & WALL_E == 0;
                let b = m.walls((x + 1, y)) & WALL_W == 0;
                if a != b {
                    return false;
                }
                edges += a as usize;
            }
            if y + 1 < h {
                let a = m.walls((x, y)) & WALL_S == 0;
                let b = m.walls((x, y + 1)) & WALL_N == 0;
                if a != b {
                    return false;
                }
                edges += a as usize;
            }
        }
    }
    let mut seen = vec![vec![false; w]; h];
    let mut queue = VecDeque::from([(0, 0)]);
    seen[0][0] = true;
    let mut reached = 1;
    while let Some(c) = queue.pop_front() {
        for n in open_neighbors(m, c) {
            if !seen[n.1][n.0] {
                seen[n.1][n.0] = true;
                reached += 1;
                queue.push_back(n);
            }
        }
    }
    edges == w * h - 1 && reached == w * h
}
