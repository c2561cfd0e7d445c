//! Perfect mazes on a rectangular grid and their ASCII codec.
//!
//! Rendering uses 4 columns per cell and 2 text lines per cell row plus a
//! closing wall line:
//!
//! ```text
//! +   +---+
//! | **    |
//! +---+   +
//! |     vv|
//! +---+   +
//! ```
//!
//! `+` marks every wall intersection, `---` a horizontal wall and `|` a
//! vertical one. The entry is the top-left cell (open to the north) and the
//! exit the bottom-right cell (open to the south). In a solved rendering the
//! entry shows `**` and every later path cell shows the arrow of the step
//! that entered it: `^^`, `>>`, `vv` or `<<`.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng;

pub const WALL_N: u8 = 1;
pub const WALL_E: u8 = 2;
pub const WALL_S: u8 = 4;
pub const WALL_W: u8 = 8;
const ALL_WALLS: u8 = WALL_N | WALL_E | WALL_S | WALL_W;

/// Column, row.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Right,
    Down,
    Left,
}

impl Direction {
    /// Neighbor exploration order used by both solvers.
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Right,
        Direction::Down,
        Direction::Left,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Direction::Up => "^^",
            Direction::Right => ">>",
            Direction::Down => "vv",
            Direction::Left => "<<",
        }
    }

    pub fn from_token(token: &str) -> Option<Direction> {
        Some(match token {
            "^^" => Direction::Up,
            ">>" => Direction::Right,
            "vv" => Direction::Down,
            "<<" => Direction::Left,
            _ => return None,
        })
    }

    fn wall(self) -> u8 {
        match self {
            Direction::Up => WALL_N,
            Direction::Right => WALL_E,
            Direction::Down => WALL_S,
            Direction::Left => WALL_W,
        }
    }

    fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Right => Direction::Left,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
        }
    }
}

pub const ENTRY_TOKEN: &str = "**";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    Bfs,
    Dfs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MazeError {
    #[error("maze must be at least 2x2, got {width}x{height}")]
    Size { width: usize, height: usize },
    #[error("exit is unreachable from the entry")]
    Unreachable,
    #[error("path is not a valid entry-to-exit walk: {0:?}")]
    InvalidPath(PathCheck),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MazeParseError {
    #[error("malformed maze geometry at line {line}, column {column}")]
    Geometry { line: usize, column: usize },
    #[error("unknown cell content at line {line}, column {column}")]
    UnknownToken { line: usize, column: usize },
    #[error("path tokens do not form a connected walk from the entry")]
    DanglingPath,
}

/// Outcome of checking a path against a maze.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathCheck {
    Valid,
    /// Step index that runs into a wall or off the grid.
    WallCrossed(usize),
    /// The walk ended somewhere other than the exit.
    WrongEndpoint(Cell),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MazePath {
    pub steps: Vec<Direction>,
}

impl MazePath {
    pub fn new(steps: Vec<Direction>) -> Self {
        MazePath { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Maze {
    width: usize,
    height: usize,
    walls: Vec<u8>,
}

impl Maze {
    /// A grid with every wall standing except the entry and exit openings.
    pub fn closed(width: usize, height: usize) -> Result<Maze, MazeError> {
        if width < 2 || height < 2 {
            return Err(MazeError::Size { width, height });
        }
        let mut walls = vec![ALL_WALLS; width * height];
        walls[0] &= !WALL_N;
        walls[width * height - 1] &= !WALL_S;
        Ok(Maze {
            width,
            height,
            walls,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn entry(&self) -> Cell {
        (0, 0)
    }

    pub fn exit(&self) -> Cell {
        (self.width - 1, self.height - 1)
    }

    pub fn walls(&self, cell: Cell) -> u8 {
        self.walls[self.idx(cell)]
    }

    pub fn has_wall(&self, cell: Cell, dir: Direction) -> bool {
        self.walls(cell) & dir.wall() != 0
    }

    fn idx(&self, (x, y): Cell) -> usize {
        y * self.width + x
    }

    /// The in-grid neighbor of `cell` in direction `dir`.
    pub fn neighbor(&self, (x, y): Cell, dir: Direction) -> Option<Cell> {
        match dir {
            Direction::Up if y > 0 => Some((x, y - 1)),
            Direction::Right if x + 1 < self.width => Some((x + 1, y)),
            Direction::Down if y + 1 < self.height => Some((x, y + 1)),
            Direction::Left if x > 0 => Some((x - 1, y)),
            _ => None,
        }
    }

    /// Neighbor reachable without crossing a wall.
    pub fn step(&self, cell: Cell, dir: Direction) -> Option<Cell> {
        if self.has_wall(cell, dir) {
            None
        } else {
            self.neighbor(cell, dir)
        }
    }

    /// Remove the wall between `cell` and its neighbor in `dir` on both sides.
    pub fn carve(&mut self, cell: Cell, dir: Direction) {
        let next = self
            .neighbor(cell, dir)
            .expect("carve stays inside the grid");
        let (a, b) = (self.idx(cell), self.idx(next));
        self.walls[a] &= !dir.wall();
        self.walls[b] &= !dir.opposite().wall();
    }

    /// Open passages between adjacent cells, each counted once.
    pub fn open_internal_edges(&self) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                for dir in [Direction::Right, Direction::Down] {
                    if let Some(n) = self.step((x, y), dir) {
                        out.push(((x, y), n));
                    }
                }
            }
        }
        out
    }

    pub fn validate_path(&self, path: &MazePath) -> PathCheck {
        let mut at = self.entry();
        for (i, &dir) in path.steps.iter().enumerate() {
            match self.step(at, dir) {
                Some(next) => at = next,
                None => return PathCheck::WallCrossed(i),
            }
        }
        if at == self.exit() {
            PathCheck::Valid
        } else {
            PathCheck::WrongEndpoint(at)
        }
    }

    pub fn solve(&self, strategy: Strategy) -> Result<MazePath, MazeError> {
        match strategy {
            Strategy::Bfs => self.solve_bfs(),
            Strategy::Dfs => self.solve_dfs(),
        }
    }

    fn solve_bfs(&self) -> Result<MazePath, MazeError> {
        let n = self.width * self.height;
        let mut came_from: Vec<Option<(Cell, Direction)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.entry()]);
        seen[self.idx(self.entry())] = true;
        while let Some(cell) = queue.pop_front() {
            if cell == self.exit() {
                let mut steps = Vec::new();
                let mut at = cell;
                while let Some((prev, dir)) = came_from[self.idx(at)] {
                    steps.push(dir);
                    at = prev;
                }
                steps.reverse();
                return Ok(MazePath::new(steps));
            }
            for dir in Direction::ALL {
                if let Some(next) = self.step(cell, dir) {
                    let i = self.idx(next);
                    if !seen[i] {
                        seen[i] = true;
                        came_from[i] = Some((cell, dir));
                        queue.push_back(next);
                    }
                }
            }
        }
        Err(MazeError::Unreachable)
    }

    fn solve_dfs(&self) -> Result<MazePath, MazeError> {
        let mut seen = vec![false; self.width * self.height];
        let mut steps = Vec::new();
        // Each frame is a cell plus the index of the next direction to try.
        let mut stack = vec![(self.entry(), 0usize)];
        seen[0] = true;
        while let Some(frame) = stack.last_mut() {
            let (cell, next_dir) = *frame;
            if cell == self.exit() {
                return Ok(MazePath::new(steps));
            }
            if next_dir == Direction::ALL.len() {
                stack.pop();
                steps.pop();
                continue;
            }
            frame.1 += 1;
            let dir = Direction::ALL[next_dir];
            if let Some(next) = self.step(cell, dir) {
                let i = self.idx(next);
                if !seen[i] {
                    seen[i] = true;
                    steps.push(dir);
                    stack.push((next, 0));
                }
            }
        }
        Err(MazeError::Unreachable)
    }

    /// Cells visited by `path` starting at the entry, stopping before the
    /// first step that is blocked.
    pub fn trace(&self, path: &MazePath) -> Vec<Cell> {
        let mut cells = vec![self.entry()];
        let mut at = self.entry();
        for &dir in &path.steps {
            match self.step(at, dir) {
                Some(next) => {
                    at = next;
                    cells.push(at);
                }
                None => break,
            }
        }
        cells
    }

    /// ASCII rendering, optionally with the solution overlaid.
    pub fn render(&self, path: Option<&MazePath>) -> Result<String, MazeError> {
        let mut interiors = vec![None::<&'static str>; self.width * self.height];
        if let Some(path) = path {
            let check = self.validate_path(path);
            if check != PathCheck::Valid {
                return Err(MazeError::InvalidPath(check));
            }
            interiors[0] = Some(ENTRY_TOKEN);
            let mut at = self.entry();
            for &dir in &path.steps {
                at = self.step(at, dir).expect("validated");
                interiors[self.idx(at)] = Some(dir.token());
            }
        }
        let mut lines = Vec::with_capacity(self.height * 2 + 1);
        for y in 0..self.height {
            lines.push(self.wall_line(|x| self.has_wall((x, y), Direction::Up)));
            let mut line = String::with_capacity(self.width * 4 + 1);
            for x in 0..self.width {
                line.push(if self.has_wall((x, y), Direction::Left) {
                    '|'
                } else {
                    ' '
                });
                match interiors[self.idx((x, y))] {
                    Some(token) => {
                        line.push(' ');
                        line.push_str(token);
                    }
                    None => line.push_str("   "),
                }
            }
            line.push(if self.has_wall((self.width - 1, y), Direction::Right) {
                '|'
            } else {
                ' '
            });
            lines.push(line.trim_end().to_string());
        }
        lines.push(self.wall_line(|x| self.has_wall((x, self.height - 1), Direction::Down)));
        Ok(lines.join("\n"))
    }

    fn wall_line(&self, closed: impl Fn(usize) -> bool) -> String {
        let mut line = String::with_capacity(self.width * 4 + 1);
        for x in 0..self.width {
            line.push('+');
            line.push_str(if closed(x) { "---" } else { "   " });
        }
        line.push('+');
        line
    }

    /// Parse a rendering back into the maze and, when arrows are present,
    /// the path. Trailing whitespace on each line is ignored.
    pub fn parse(text: &str) -> Result<(Maze, Option<MazePath>), MazeParseError> {
        let lines: Vec<Vec<char>> = text
            .trim_matches('\n')
            .lines()
            .map(|l| l.trim_end().chars().collect())
            .collect();
        let geometry = |line: usize, column: usize| MazeParseError::Geometry {
            line: line + 1,
            column: column + 1,
        };
        if lines.len() < 5 || lines.len().is_multiple_of(2) {
            return Err(geometry(lines.len(), 0));
        }
        let height = (lines.len() - 1) / 2;
        let row_len = lines[0].len();
        if row_len < 9 || !(row_len - 1).is_multiple_of(4) {
            return Err(geometry(0, row_len));
        }
        let width = (row_len - 1) / 4;
        let mut maze = Maze::closed(width, height).expect("size checked");
        let mut interiors: Vec<Option<Option<Direction>>> = vec![None; width * height];

        for (ln, line) in lines.iter().enumerate() {
            if line.len() > row_len {
                return Err(geometry(ln, row_len));
            }
            let at = |col: usize| line.get(col).copied().unwrap_or(' ');
            if ln % 2 == 0 {
                // Wall line above row ln/2 (or the bottom boundary).
                for x in 0..width {
                    let base = x * 4;
                    if at(base) != '+' {
                        return Err(geometry(ln, base));
                    }
                    let seg: String = (1..4).map(|i| at(base + i)).collect();
                    let closed = match seg.as_str() {
                        "---" => true,
                        "   " => false,
                        _ => {
                            let bad = (1..4)
                                .find(|&i| !matches!(at(base + i), '-' | ' '))
                                .unwrap_or(1);
                            return Err(geometry(ln, base + bad));
                        }
                    };
                    let y = ln / 2;
                    if y == 0 || y == height {
                        let cell = if y == 0 { (x, 0) } else { (x, height - 1) };
                        let opening = (y == 0 && cell == maze.entry())
                            || (y == height && cell == maze.exit());
                        if closed == opening {
                            return Err(geometry(ln, base + 1));
                        }
                    } else if !closed {
                        maze.carve((x, y), Direction::Up);
                    }
                }
                if at(width * 4) != '+' {
                    return Err(geometry(ln, width * 4));
                }
            } else {
                let y = ln / 2;
                for x in 0..width {
                    let base = x * 4;
                    match (x, at(base)) {
                        (0, '|') => {}
                        (0, _) => return Err(geometry(ln, base)),
                        (_, '|') => {}
                        (_, ' ') => maze.carve((x, y), Direction::Left),
                        _ => return Err(geometry(ln, base)),
                    }
                    let interior: String = (1..4).map(|i| at(base + i)).collect();
                    interiors[y * width + x] = match interior.as_str() {
                        "   " => None,
                        _ if interior.starts_with(' ') && &interior[1..] == ENTRY_TOKEN => {
                            Some(None)
                        }
                        _ if interior.starts_with(' ') => {
                            match Direction::from_token(&interior[1..]) {
                                Some(d) => Some(Some(d)),
                                None => {
                                    return Err(MazeParseError::UnknownToken {
                                        line: ln + 1,
                                        column: base + 2,
                                    })
                                }
                            }
                        }
                        _ => {
                            return Err(MazeParseError::UnknownToken {
                                line: ln + 1,
                                column: base + 2,
                            })
                        }
                    };
                }
                if at(width * 4) != '|' {
                    return Err(geometry(ln, width * 4));
                }
            }
        }

        let path = recover_path(&maze, &interiors)?;
        Ok((maze, path))
    }
}

/// Follow arrow tokens from the `**` cell. `interiors[i]` is `None` for an
/// empty cell, `Some(None)` for `**` and `Some(Some(dir))` for an arrow.
fn recover_path(
    maze: &Maze,
    interiors: &[Option<Option<Direction>>],
) -> Result<Option<MazePath>, MazeParseError> {
    let marked = interiors.iter().filter(|c| c.is_some()).count();
    if marked == 0 {
        return Ok(None);
    }
    if interiors[0] != Some(None) || interiors[1..].contains(&Some(None)) {
        return Err(MazeParseError::DanglingPath);
    }
    let mut used = vec![false; interiors.len()];
    used[0] = true;
    let mut at = maze.entry();
    let mut steps = Vec::new();
    loop {
        let mut next = None;
        for dir in Direction::ALL {
            if let Some(n) = maze.neighbor(at, dir) {
                let i = maze.idx(n);
                if !used[i] && interiors[i] == Some(Some(dir)) {
                    if next.is_some() {
                        return Err(MazeParseError::DanglingPath);
                    }
                    next = Some((n, dir));
                }
            }
        }
        match next {
            Some((n, dir)) => {
                used[maze.idx(n)] = true;
                steps.push(dir);
                at = n;
            }
            None => break,
        }
    }
    if steps.len() + 1 != marked {
        return Err(MazeParseError::DanglingPath);
    }
    Ok(Some(MazePath::new(steps)))
}

/// Seeded recursive-backtracker (depth-first carving) perfect maze.
pub fn generate_maze(seed: u64, width: usize, height: usize) -> Result<Maze, MazeError> {
    let mut maze = Maze::closed(width, height)?;
    let mut rng = rng::seeded(seed);
    let mut visited = vec![false; width * height];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    while let Some(&cell) = stack.last() {
        let mut options: Vec<Direction> = Direction::ALL
            .into_iter()
            .filter(|&d| {
                maze.neighbor(cell, d)
                    .is_some_and(|n| !visited[maze.idx(n)])
            })
            .collect();
        if options.is_empty() {
            stack.pop();
            continue;
        }
        options.shuffle(&mut rng);
        let dir = options[0];
        let next = maze.neighbor(cell, dir).expect("filtered");
        maze.carve(cell, dir);
        visited[maze.idx(next)] = true;
        stack.push(next);
    }
    Ok(maze)
}

impl fmt::Display for Maze {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None).expect("unsolved render cannot fail"))
    }
}
