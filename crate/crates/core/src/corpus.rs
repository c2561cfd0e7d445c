//! Training records for all three puzzles and the corpus files built from
//! them.
//!
//! Cube and Sudoku records are single lines:
//!
//! ```text
//! <|startoftext|>[WP] <prompt> [RESPONSE] <response> <|endoftext|>
//! ```
//!
//! Maze records keep the rendered grids intact, one framing token per line:
//!
//! ```text
//! <|startoftext|>
//! [WP]
//! <unsolved maze>
//! [RESPONSE]
//! <solved maze>
//! <|endoftext|>
//! ```
//!
//! A corpus file is its records joined by `\n`, with a trailing newline.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{self, FaceletCube, Formula};
use crate::maze::{self, Maze, Strategy};
use crate::rng;
use crate::sudoku::{self, GridError, SudokuError, SudokuGrid};

pub const START_TOKEN: &str = "<|startoftext|>";
pub const END_TOKEN: &str = "<|endoftext|>";
pub const PROMPT_TOKEN: &str = "[WP]";
pub const RESPONSE_TOKEN: &str = "[RESPONSE]";

/// Bumped whenever the byte layout of records or sidecars changes.
pub const FORMAT_VERSION: u32 = 1;

/// Largest maze side accepted for corpora.
pub const MAX_MAZE_SIDE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PuzzleKind {
    Cube,
    Sudoku,
    Maze,
}

impl fmt::Display for PuzzleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PuzzleKind::Cube => "cube",
            PuzzleKind::Sudoku => "sudoku",
            PuzzleKind::Maze => "maze",
        })
    }
}

/// How a record was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum GenParams {
    Cube {
        scramble_length: usize,
        scramble: String,
    },
    Sudoku {
        clues: usize,
    },
    Maze {
        width: usize,
        height: usize,
    },
    SudokuCsv {
        line: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub params: GenParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleRecord {
    pub kind: PuzzleKind,
    pub prompt: String,
    pub response: String,
    /// Not part of the serialized text; carried in the sidecar file.
    pub meta: Option<RecordMeta>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("record framing is missing or misordered: {0}")]
    Framing(&'static str),
    #[error("prompt does not look like a cube, sudoku or maze")]
    Kind,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("total {total} is not divisible by {buckets}")]
    Divisibility { total: usize, buckets: usize },
    #[error("maze size {width}x{height} outside 2x2..=6x6")]
    MazeSize { width: usize, height: usize },
    #[error("invalid clue range {min}..={max}")]
    ClueRange { min: usize, max: usize },
    #[error("test fraction {0} outside (0, 1)")]
    Fraction(f64),
    #[error(transparent)]
    Solve(#[from] cube::SolveError),
    #[error(transparent)]
    Scramble(#[from] cube::ScrambleError),
    #[error(transparent)]
    Sudoku(#[from] SudokuError),
    #[error(transparent)]
    Maze(#[from] maze::MazeError),
    #[error("record {index}: {source}")]
    Record { index: usize, source: RecordError },
    #[error("file error: {0}")]
    File(String),
}

impl PuzzleRecord {
    pub fn new(kind: PuzzleKind, prompt: impl Into<String>, response: impl Into<String>) -> Self {
        PuzzleRecord {
            kind,
            prompt: prompt.into(),
            response: response.into(),
            meta: None,
        }
    }

    pub fn with_meta(mut self, meta: RecordMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    /// Key used for deduplication and train/test disjointness: the initial
    /// state as it appears in the prompt.
    pub fn canonical_key(&self) -> &str {
        &self.prompt
    }

    pub fn serialize(&self) -> String {
        match self.kind {
            PuzzleKind::Cube | PuzzleKind::Sudoku => format!(
                "{START_TOKEN}{PROMPT_TOKEN} {} {RESPONSE_TOKEN} {} {END_TOKEN}",
                self.prompt, self.response
            ),
            PuzzleKind::Maze => format!(
                "{START_TOKEN}\n{PROMPT_TOKEN}\n{}\n{RESPONSE_TOKEN}\n{}\n{END_TOKEN}",
                self.prompt, self.response
            ),
        }
    }

    /// Strict inverse of [`PuzzleRecord::serialize`].
    pub fn parse(text: &str) -> Result<PuzzleRecord, RecordError> {
        if let Some(body) = text.strip_prefix(&format!("{START_TOKEN}\n{PROMPT_TOKEN}\n")) {
            let body = body
                .strip_suffix(&format!("\n{END_TOKEN}"))
                .ok_or(RecordError::Framing("missing end token"))?;
            let (prompt, response) = body
                .split_once(&format!("\n{RESPONSE_TOKEN}\n"))
                .ok_or(RecordError::Framing("missing [RESPONSE]"))?;
            if !looks_like_maze(prompt) {
                return Err(RecordError::Kind);
            }
            return Ok(PuzzleRecord::new(PuzzleKind::Maze, prompt, response));
        }
        let body = text
            .strip_prefix(&format!("{START_TOKEN}{PROMPT_TOKEN} "))
            .ok_or(RecordError::Framing("missing start token or [WP]"))?;
        let body = body
            .strip_suffix(&format!(" {END_TOKEN}"))
            .ok_or(RecordError::Framing("missing end token"))?;
        let (prompt, response) = body
            .split_once(&format!(" {RESPONSE_TOKEN} "))
            .ok_or(RecordError::Framing("missing [RESPONSE]"))?;
        let kind = classify_prompt(prompt).ok_or(RecordError::Kind)?;
        Ok(PuzzleRecord::new(kind, prompt, response))
    }
}

impl PuzzleRecord {
    /// Parse a record whose whitespace may have been reflowed, as happens
    /// when a record is typeset or produced by a model. Cube and Sudoku
    /// prompts lose all whitespace, cube responses have runs of whitespace
    /// collapsed to one space and Sudoku responses lose all whitespace.
    /// Maze records must still be byte-exact.
    pub fn parse_lenient(text: &str) -> Result<PuzzleRecord, RecordError> {
        let text = text.trim();
        if let Ok(r) = PuzzleRecord::parse(text) {
            return Ok(r);
        }
        let body = text
            .strip_prefix(START_TOKEN)
            .ok_or(RecordError::Framing("missing start token"))?
            .trim_start()
            .strip_prefix(PROMPT_TOKEN)
            .ok_or(RecordError::Framing("missing [WP]"))?;
        let body = body
            .strip_suffix(END_TOKEN)
            .ok_or(RecordError::Framing("missing end token"))?;
        let (prompt, response) = body
            .split_once(RESPONSE_TOKEN)
            .ok_or(RecordError::Framing("missing [RESPONSE]"))?;
        let prompt: String = prompt.split_whitespace().collect();
        let kind = classify_prompt(&prompt).ok_or(RecordError::Kind)?;
        let response = match kind {
            PuzzleKind::Sudoku => response.split_whitespace().collect::<String>(),
            _ => response.split_whitespace().collect::<Vec<_>>().join(" "),
        };
        Ok(PuzzleRecord::new(kind, prompt, response))
    }
}

fn looks_like_maze(prompt: &str) -> bool {
    prompt.starts_with('+') && prompt.contains('\n')
}

/// Kind of a single-line prompt, judged by its shape alone.
pub fn classify_prompt(prompt: &str) -> Option<PuzzleKind> {
    let n = prompt.chars().count();
    if n == 54 && prompt.chars().all(|c| "URFDBL".contains(c)) {
        Some(PuzzleKind::Cube)
    } else if n == 81 && prompt.chars().all(|c| c.is_ascii_digit()) {
        Some(PuzzleKind::Sudoku)
    } else {
        None
    }
}

/// Spans from each start token through the following end token.
pub fn split_framed(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find(START_TOKEN) {
        let tail = &rest[start..];
        match tail.find(END_TOKEN) {
            Some(end) => {
                let stop = end + END_TOKEN.len();
                out.push(&tail[..stop]);
                rest = &tail[stop..];
            }
            None => break,
        }
    }
    out
}

pub fn corpus_text(records: &[PuzzleRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.serialize());
        out.push('\n');
    }
    out
}

pub fn parse_corpus(text: &str) -> Result<Vec<PuzzleRecord>, CorpusError> {
    split_framed(text)
        .into_iter()
        .enumerate()
        .map(|(index, span)| {
            PuzzleRecord::parse(span).map_err(|source| CorpusError::Record { index, source })
        })
        .collect()
}

/// One JSON object per record: index, kind, seed and generation parameters.
pub fn meta_jsonl(records: &[PuzzleRecord]) -> String {
    #[derive(Serialize)]
    struct Line<'a> {
        index: usize,
        kind: PuzzleKind,
        format_version: u32,
        #[serde(flatten)]
        meta: Option<&'a RecordMeta>,
    }
    let mut out = String::new();
    for (index, r) in records.iter().enumerate() {
        let line = Line {
            index,
            kind: r.kind,
            format_version: FORMAT_VERSION,
            meta: r.meta.as_ref(),
        };
        out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
        out.push('\n');
    }
    out
}

fn map_records<T, F>(items: Vec<T>, f: F) -> Vec<Result<PuzzleRecord, CorpusError>>
where
    T: Send,
    F: Fn(T) -> Result<PuzzleRecord, CorpusError> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// `total / max_scramble` scrambles for every length in `1..=max_scramble`,
/// each labelled with an optimal solution. Records are ordered by length.
pub fn build_cube_corpus(
    seed: u64,
    total: usize,
    max_scramble: usize,
) -> Result<Vec<PuzzleRecord>, CorpusError> {
    if max_scramble == 0 || !total.is_multiple_of(max_scramble) {
        return Err(CorpusError::Divisibility {
            total,
            buckets: max_scramble,
        });
    }
    let per_length = total / max_scramble;
    let jobs: Vec<(usize, usize)> = (0..total).map(|i| (i, i / per_length + 1)).collect();
    let depth = max_scramble.max(cube::DEFAULT_MAX_DEPTH);
    map_records(jobs, |(i, length)| {
        let record_seed = rng::derive_seed(seed, i as u64);
        let scramble = cube::random_scramble_capped(record_seed, length, max_scramble)?;
        let state = FaceletCube::solved().apply_formula(&scramble);
        let solution = cube::solve(&state, depth)?;
        Ok(
            PuzzleRecord::new(PuzzleKind::Cube, state.encode(), solution.to_string()).with_meta(
                RecordMeta {
                    seed: Some(record_seed),
                    params: GenParams::Cube {
                        scramble_length: length,
                        scramble: scramble.to_string(),
                    },
                },
            ),
        )
    })
    .into_iter()
    .collect()
}

/// Puzzles with a clue count drawn uniformly from `min..=max` per record,
/// each with a unique solution.
pub fn build_sudoku_corpus(
    seed: u64,
    total: usize,
    (min, max): (usize, usize),
) -> Result<Vec<PuzzleRecord>, CorpusError> {
    if min > max || min < 17 || max > 80 {
        return Err(CorpusError::ClueRange { min, max });
    }
    map_records((0..total).collect(), |i| {
        let record_seed = rng::derive_seed(seed, i as u64);
        let clues = rng::seeded(record_seed).gen_range(min..=max);
        let (puzzle, solution) = sudoku::generate_puzzle(record_seed, clues, true)?;
        Ok(
            PuzzleRecord::new(PuzzleKind::Sudoku, puzzle.format(), solution.format()).with_meta(
                RecordMeta {
                    seed: Some(record_seed),
                    params: GenParams::Sudoku { clues },
                },
            ),
        )
    })
    .into_iter()
    .collect()
}

/// Mazes cycling through `sizes`; prompt is the unsolved rendering and
/// response the same maze with its solution drawn in.
pub fn build_maze_corpus(
    seed: u64,
    total: usize,
    sizes: &[(usize, usize)],
) -> Result<Vec<PuzzleRecord>, CorpusError> {
    if sizes.is_empty() {
        return Err(CorpusError::MazeSize {
            width: 0,
            height: 0,
        });
    }
    for &(width, height) in sizes {
        if !(2..=MAX_MAZE_SIDE).contains(&width) || !(2..=MAX_MAZE_SIDE).contains(&height) {
            return Err(CorpusError::MazeSize { width, height });
        }
    }
    map_records((0..total).collect(), |i| {
        let record_seed = rng::derive_seed(seed, i as u64);
        let (width, height) = sizes[i % sizes.len()];
        let m = maze::generate_maze(record_seed, width, height)?;
        let path = m.solve(Strategy::Bfs)?;
        Ok(
            PuzzleRecord::new(PuzzleKind::Maze, m.render(None)?, m.render(Some(&path))?).with_meta(
                RecordMeta {
                    seed: Some(record_seed),
                    params: GenParams::Maze { width, height },
                },
            ),
        )
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RowProblem {
    #[error("expected 2 columns, found {0}")]
    Columns(usize),
    #[error("puzzle: {0}")]
    Puzzle(GridError),
    #[error("solution: {0}")]
    Solution(GridError),
    #[error("solution is not a complete, consistent grid")]
    NotSolved,
    #[error("solution changes a puzzle clue")]
    ClueMismatch,
    #[error("unreadable row: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {problem}")]
pub struct RowError {
    pub line: u64,
    pub problem: RowProblem,
}

#[derive(Debug, Clone, Default)]
pub struct CsvIngest {
    pub records: Vec<PuzzleRecord>,
    pub rejected: Vec<RowError>,
}

/// Read `quizzes,solutions` CSV rows (header required). Bad rows are
/// collected in `rejected` and do not stop the import.
pub fn ingest_sudoku_csv(path: impl AsRef<Path>) -> Result<CsvIngest, CorpusError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| CorpusError::File(format!("{}: {e}", path.display())))?;
    ingest_sudoku_reader(file)
}

pub fn ingest_sudoku_reader<R: std::io::Read>(reader: R) -> Result<CsvIngest, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let mut out = CsvIngest::default();
    for row in rdr.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                out.rejected.push(RowError {
                    line,
                    problem: RowProblem::Csv(e.to_string()),
                });
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        match check_row(&row) {
            Ok((puzzle, solution)) => out.records.push(
                PuzzleRecord::new(PuzzleKind::Sudoku, puzzle.format(), solution.format())
                    .with_meta(RecordMeta {
                        seed: None,
                        params: GenParams::SudokuCsv { line },
                    }),
            ),
            Err(problem) => out.rejected.push(RowError { line, problem }),
        }
    }
    Ok(out)
}

fn check_row(row: &csv::StringRecord) -> Result<(SudokuGrid, SudokuGrid), RowProblem> {
    if row.len() != 2 {
        return Err(RowProblem::Columns(row.len()));
    }
    let puzzle = SudokuGrid::parse(row[0].trim()).map_err(RowProblem::Puzzle)?;
    let solution = SudokuGrid::parse(row[1].trim()).map_err(RowProblem::Solution)?;
    if !solution.is_solved() {
        return Err(RowProblem::NotSolved);
    }
    if !solution.agrees_with(&puzzle) {
        return Err(RowProblem::ClueMismatch);
    }
    Ok((puzzle, solution))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSplit {
    pub train: Vec<PuzzleRecord>,
    pub test: Vec<PuzzleRecord>,
    pub seed: u64,
}

/// Keep the first record for each canonical key, preserving order.
pub fn dedup(records: Vec<PuzzleRecord>) -> Vec<PuzzleRecord> {
    let mut seen = HashSet::new();
    records
        .into_iter()
        .filter(|r| seen.insert(r.canonical_key().to_string()))
        .collect()
}

/// Deduplicate, shuffle with `seed`, and move `round(test_fraction * n)`
/// records to the test side.
pub fn dedup_and_split(
    records: Vec<PuzzleRecord>,
    seed: u64,
    test_fraction: f64,
) -> Result<CorpusSplit, CorpusError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(CorpusError::Fraction(test_fraction));
    }
    let mut unique = dedup(records);
    unique.shuffle(&mut rng::seeded(seed));
    let n_test = (test_fraction * unique.len() as f64).round() as usize;
    let train = unique.split_off(n_test);
    Ok(CorpusSplit {
        train,
        test: unique,
        seed,
    })
}

/// Check that `record.response` actually solves `record.prompt`.
pub fn verify_record(record: &PuzzleRecord) -> bool {
    match record.kind {
        PuzzleKind::Cube => {
            let (Ok(state), Ok(f)) = (
                FaceletCube::decode(&record.prompt),
                Formula::parse(&record.response),
            ) else {
                return false;
            };
            state.apply_formula(&f).is_solved()
        }
        PuzzleKind::Sudoku => {
            let (Ok(p), Ok(s)) = (
                SudokuGrid::parse(&record.prompt),
                SudokuGrid::parse(&record.response),
            ) else {
                return false;
            };
            p.is_consistent() && s.is_solved() && s.agrees_with(&p)
        }
        PuzzleKind::Maze => {
            let (Ok((m, None)), Ok((m2, Some(path)))) =
                (Maze::parse(&record.prompt), Maze::parse(&record.response))
            else {
                return false;
            };
            m == m2 && m.validate_path(&path) == maze::PathCheck::Valid
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_PUZZLE: &str =
        "004300209005009001070060043006002087190007400050083000600000105003508690042910300";
    const EXAMPLE_SOLUTION: &str =
        "864371259325849761971265843436192587198657432257483916689734125713528694542916378";

    #[test]
    fn sudoku_record_framing() {
        let r = PuzzleRecord::new(PuzzleKind::Sudoku, EXAMPLE_PUZZLE, EXAMPLE_SOLUTION);
        let text = r.serialize();
        assert_eq!(
            text,
            format!(
                "<|startoftext|>[WP] {EXAMPLE_PUZZLE} [RESPONSE] {EXAMPLE_SOLUTION} <|endoftext|>"
            )
        );
        let back = PuzzleRecord::parse(&text).unwrap();
        assert_eq!(back, r);
        assert!(verify_record(&back));
    }

    #[test]
    fn framing_errors() {
        let text = format!("<|startoftext|>[WP] {EXAMPLE_PUZZLE} {EXAMPLE_SOLUTION} <|endoftext|>");
        assert_eq!(
            PuzzleRecord::parse(&text),
            Err(RecordError::Framing("missing [RESPONSE]"))
        );
        assert!(matches!(
            PuzzleRecord::parse("[WP] x [RESPONSE] y <|endoftext|>"),
            Err(RecordError::Framing(_))
        ));
        assert_eq!(
            PuzzleRecord::parse("<|startoftext|>[WP] hello [RESPONSE] R <|endoftext|>"),
            Err(RecordError::Kind)
        );
    }

    #[test]
    fn empty_cube_response_round_trips() {
        let r = PuzzleRecord::new(PuzzleKind::Cube, cube::SOLVED_FACELETS, "");
        assert_eq!(PuzzleRecord::parse(&r.serialize()).unwrap(), r);
    }

    #[test]
    fn cube_corpus_buckets_and_validity() {
        let records = build_cube_corpus(3, 100, 5).unwrap();
        assert_eq!(records.len(), 100);
        for (i, r) in records.iter().enumerate() {
            let Some(RecordMeta {
                params: GenParams::Cube {
                    scramble_length, ..
                },
                ..
            }) = &r.meta
            else {
                panic!("cube meta expected");
            };
            assert_eq!(*scramble_length, i / 20 + 1);
            assert!(verify_record(r));
        }
        assert!(matches!(
            build_cube_corpus(3, 101, 5),
            Err(CorpusError::Divisibility { .. })
        ));
    }

    #[test]
    fn maze_corpus_cycles_sizes() {
        let records = build_maze_corpus(5, 10, &[(4, 4), (5, 5)]).unwrap();
        let fours = records
            .iter()
            .filter(|r| {
                matches!(
                    r.meta.as_ref().unwrap().params,
                    GenParams::Maze { width: 4, .. }
                )
            })
            .count();
        assert_eq!(fours, 5);
        assert!(records.iter().all(verify_record));
        let text = corpus_text(&records);
        let back = parse_corpus(&text).unwrap();
        assert_eq!(back.len(), 10);
        assert_eq!(corpus_text(&back), text);
        assert!(matches!(
            build_maze_corpus(5, 10, &[(7, 7)]),
            Err(CorpusError::MazeSize {
                width: 7,
                height: 7
            })
        ));
    }

    #[test]
    fn sudoku_corpus() {
        let a = build_sudoku_corpus(9, 6, (25, 35)).unwrap();
        assert_eq!(
            corpus_text(&a),
            corpus_text(&build_sudoku_corpus(9, 6, (25, 35)).unwrap())
        );
        for r in &a {
            assert!(verify_record(r));
            let clues = SudokuGrid::parse(&r.prompt).unwrap().filled();
            assert!((25..=35).contains(&clues));
        }
    }

    #[test]
    fn split_arithmetic_and_dedup() {
        let records: Vec<PuzzleRecord> = build_maze_corpus(1, 10, &[(4, 4)]).unwrap();
        let split = dedup_and_split(records.clone(), 4, 0.2).unwrap();
        assert_eq!((split.train.len(), split.test.len()), (8, 2));

        let mut doubled = records.clone();
        doubled.push(records[3].clone());
        let split = dedup_and_split(doubled, 4, 0.2).unwrap();
        let hits = split
            .train
            .iter()
            .chain(&split.test)
            .filter(|r| r.prompt == records[3].prompt)
            .count();
        assert_eq!(hits, 1);
        assert!(dedup_and_split(records, 1, 1.0).is_err());
    }

    #[test]
    fn csv_ingest() {
        // Relabelling two digits keeps the grid solved but changes clues.
        let bad_clue: String = EXAMPLE_SOLUTION
            .chars()
            .map(|c| match c {
                '1' => '2',
                '2' => '1',
                c => c,
            })
            .collect();
        let csv = format!(
            "quizzes,solutions\n{EXAMPLE_PUZZLE},{EXAMPLE_SOLUTION}\n{},{EXAMPLE_SOLUTION}\n{EXAMPLE_PUZZLE},{bad_clue}\n",
            &EXAMPLE_PUZZLE[..80]
        );
        let out = ingest_sudoku_reader(csv.as_bytes()).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].prompt, EXAMPLE_PUZZLE);
        assert_eq!(out.rejected.len(), 2);
        assert_eq!(out.rejected[0].line, 3);
        assert_eq!(
            out.rejected[0].problem,
            RowProblem::Puzzle(GridError::Length(80))
        );
        assert_eq!(out.rejected[1].problem, RowProblem::ClueMismatch);
    }

    #[test]
    fn sidecar_lines() {
        let records = build_maze_corpus(2, 2, &[(3, 3)]).unwrap();
        let side = meta_jsonl(&records);
        let first: serde_json::Value = serde_json::from_str(side.lines().next().unwrap()).unwrap();
        assert_eq!(first["kind"], "maze");
        assert_eq!(first["source"], "maze");
        assert_eq!(first["width"], 3);
        assert_eq!(first["index"], 0);
    }
}
