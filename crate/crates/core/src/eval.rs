//! Scoring generated puzzle text.
//!
//! Every sample lands in exactly one class: `Invalid` when the text does not
//! parse as the puzzle's notation, `Incorrect` when it parses but does not
//! solve, `Correct` when it solves. Parsed samples also carry a partial
//! progress measure so near misses can be told apart from noise.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{self, PuzzleKind, END_TOKEN, PROMPT_TOKEN, RESPONSE_TOKEN, START_TOKEN};
use crate::cube::{self, Face, FaceletCube, Formula};
use crate::maze::{Maze, PathCheck, Strategy};
use crate::sudoku::SudokuGrid;

/// Longest cube response accepted, in characters.
pub const DEFAULT_RESPONSE_BUDGET: usize = 1024;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("prompt is not a valid initial state: {0}")]
    BadPrompt(String),
    #[error("nothing to aggregate")]
    EmptyInput,
    #[error("{prompts} prompts but {outputs} outputs")]
    LineCountMismatch { prompts: usize, outputs: usize },
    #[error("file error: {0}")]
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InvalidReason {
    SyntaxError { position: usize, token: String },
    TooLong { chars: usize },
    LengthError { chars: usize },
    DigitError { position: usize },
    ClueChanged { cell: usize },
    Framing { detail: String },
    MazeParse { detail: String },
    MissingPath,
    WallMismatch,
}

impl InvalidReason {
    /// Short label used to tally reasons in reports.
    pub fn label(&self) -> &'static str {
        match self {
            InvalidReason::SyntaxError { .. } => "syntax_error",
            InvalidReason::TooLong { .. } => "too_long",
            InvalidReason::LengthError { .. } => "length_error",
            InvalidReason::DigitError { .. } => "digit_error",
            InvalidReason::ClueChanged { .. } => "clue_changed",
            InvalidReason::Framing { .. } => "framing",
            InvalidReason::MazeParse { .. } => "maze_parse",
            InvalidReason::MissingPath => "missing_path",
            InvalidReason::WallMismatch => "wall_mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Class {
    Invalid(InvalidReason),
    Incorrect,
    Correct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeProgress {
    /// Faces whose nine facelets all match the center, 0..=6.
    pub solved_faces: usize,
    /// Rows and columns (counted separately, 36 in all) uniform in the
    /// color of their face's center.
    pub solved_rows_and_columns: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Progress {
    Cube(CubeProgress),
    Sudoku {
        filled: usize,
        violations: usize,
    },
    /// Leading steps that follow the shortest solution, over its length.
    Maze {
        fraction: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleVerdict {
    pub kind: PuzzleKind,
    pub class: Class,
    pub progress: Option<Progress>,
    pub generated_text: String,
    pub prompt_key: String,
    /// Breakdown label such as `distance=3`, `clues=30` or `size=4x4`.
    pub group: Option<String>,
}

impl SampleVerdict {
    pub fn is_correct(&self) -> bool {
        self.class == Class::Correct
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self.class, Class::Invalid(_))
    }
}

pub fn cube_progress(c: &FaceletCube) -> CubeProgress {
    let mut solved_faces = 0;
    let mut lines = 0;
    for face in Face::ALL {
        let f = c.face(face);
        if f.iter().all(|&x| x == face) {
            solved_faces += 1;
        }
        for i in 0..3 {
            if (0..3).all(|j| f[i * 3 + j] == face) {
                lines += 1;
            }
            if (0..3).all(|j| f[j * 3 + i] == face) {
                lines += 1;
            }
        }
    }
    CubeProgress {
        solved_faces,
        solved_rows_and_columns: lines,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CubeScoring {
    pub max_response_chars: usize,
    /// Search depth used to label samples by the optimal distance of their
    /// prompt; `0` disables the label.
    pub distance_depth: usize,
}

impl Default for CubeScoring {
    fn default() -> Self {
        CubeScoring {
            max_response_chars: DEFAULT_RESPONSE_BUDGET,
            distance_depth: cube::DEFAULT_MAX_DEPTH,
        }
    }
}

pub fn classify_cube(
    initial: &str,
    response: &str,
    opts: &CubeScoring,
) -> Result<SampleVerdict, EvalError> {
    let start = FaceletCube::decode(initial).map_err(|e| EvalError::BadPrompt(e.to_string()))?;
    let group = (opts.distance_depth > 0).then(|| match cube::solve(&start, opts.distance_depth) {
        Ok(f) => format!("distance={}", f.len()),
        Err(_) => format!("distance>{}", opts.distance_depth),
    });
    let verdict = |class, progress| SampleVerdict {
        kind: PuzzleKind::Cube,
        class,
        progress,
        generated_text: response.to_string(),
        prompt_key: initial.to_string(),
        group: group.clone(),
    };
    let chars = response.chars().count();
    if chars > opts.max_response_chars {
        return Ok(verdict(
            Class::Invalid(InvalidReason::TooLong { chars }),
            None,
        ));
    }
    let formula = match Formula::parse(response) {
        Ok(f) => f,
        Err(e) => {
            return Ok(verdict(
                Class::Invalid(InvalidReason::SyntaxError {
                    position: e.position,
                    token: e.token,
                }),
                None,
            ))
        }
    };
    let end = start.apply_formula(&formula);
    let class = if end.is_solved() {
        Class::Correct
    } else {
        Class::Incorrect
    };
    Ok(verdict(class, Some(Progress::Cube(cube_progress(&end)))))
}

#[derive(Debug, Clone, Copy)]
pub struct SudokuScoring {
    /// Treat responses that overwrite a given clue as invalid. Turning this
    /// off scores only the completed grid.
    pub require_clues: bool,
}

impl Default for SudokuScoring {
    fn default() -> Self {
        SudokuScoring {
            require_clues: true,
        }
    }
}

pub fn classify_sudoku(
    puzzle: &str,
    response: &str,
    opts: &SudokuScoring,
) -> Result<SampleVerdict, EvalError> {
    let clues = SudokuGrid::parse(puzzle).map_err(|e| EvalError::BadPrompt(e.to_string()))?;
    if !clues.is_consistent() {
        return Err(EvalError::BadPrompt("puzzle repeats a digit".into()));
    }
    let verdict = |class, progress| SampleVerdict {
        kind: PuzzleKind::Sudoku,
        class,
        progress,
        generated_text: response.to_string(),
        prompt_key: puzzle.to_string(),
        group: Some(format!("clues={}", clues.filled())),
    };
    let grid = match SudokuGrid::parse(response.trim()) {
        Ok(g) => g,
        Err(crate::sudoku::GridError::Length(chars)) => {
            return Ok(verdict(
                Class::Invalid(InvalidReason::LengthError { chars }),
                None,
            ))
        }
        Err(crate::sudoku::GridError::Digit { position, .. }) => {
            return Ok(verdict(
                Class::Invalid(InvalidReason::DigitError { position }),
                None,
            ))
        }
    };
    let progress = Some(Progress::Sudoku {
        filled: grid.filled(),
        violations: grid.find_violations().len(),
    });
    if opts.require_clues {
        if let Some(cell) = (0..81).find(|&i| clues.get(i) != 0 && grid.get(i) != clues.get(i)) {
            return Ok(verdict(
                Class::Invalid(InvalidReason::ClueChanged { cell }),
                progress,
            ));
        }
    }
    let class = if grid.is_solved() {
        Class::Correct
    } else {
        Class::Incorrect
    };
    Ok(verdict(class, progress))
}

/// Score a generated maze record: an unsolved maze and its solution between
/// the framing tokens.
pub fn classify_maze(record_text: &str) -> SampleVerdict {
    let mut verdict = SampleVerdict {
        kind: PuzzleKind::Maze,
        class: Class::Incorrect,
        progress: None,
        generated_text: record_text.to_string(),
        prompt_key: String::new(),
        group: None,
    };
    let invalid = |mut v: SampleVerdict, reason| {
        v.class = Class::Invalid(reason);
        v
    };
    let framing = |detail: &str| InvalidReason::Framing {
        detail: detail.to_string(),
    };

    let Some(start) = record_text.find(START_TOKEN) else {
        return invalid(verdict, framing("missing start token"));
    };
    let body = &record_text[start + START_TOKEN.len()..];
    let Some(end) = body.find(END_TOKEN) else {
        return invalid(verdict, framing("missing end token"));
    };
    let body = &body[..end];
    let Some(body) = body.trim_start_matches('\n').strip_prefix(PROMPT_TOKEN) else {
        return invalid(verdict, framing("missing [WP]"));
    };
    let Some((prompt, response)) = body.split_once(RESPONSE_TOKEN) else {
        return invalid(verdict, framing("missing [RESPONSE]"));
    };
    let (prompt, response) = (prompt.trim_matches('\n'), response.trim_matches('\n'));
    verdict.prompt_key = prompt.to_string();

    let maze = match Maze::parse(prompt) {
        Ok((m, _)) => m,
        Err(e) => {
            return invalid(
                verdict,
                InvalidReason::MazeParse {
                    detail: format!("unsolved half: {e}"),
                },
            )
        }
    };
    verdict.group = Some(format!("size={}x{}", maze.width(), maze.height()));
    let (solved_maze, path) = match Maze::parse(response) {
        Ok((m, Some(p))) => (m, p),
        Ok((_, None)) => return invalid(verdict, InvalidReason::MissingPath),
        Err(e) => {
            return invalid(
                verdict,
                InvalidReason::MazeParse {
                    detail: format!("solved half: {e}"),
                },
            )
        }
    };
    if solved_maze != maze {
        return invalid(verdict, InvalidReason::WallMismatch);
    }
    let fraction = match maze.solve(Strategy::Bfs) {
        Ok(best) if !best.is_empty() => {
            let agree = best
                .steps
                .iter()
                .zip(&path.steps)
                .take_while(|(a, b)| a == b)
                .count();
            agree as f64 / best.len() as f64
        }
        _ => 0.0,
    };
    verdict.progress = Some(Progress::Maze { fraction });
    if maze.validate_path(&path) == PathCheck::Valid {
        verdict.class = Class::Correct;
    }
    verdict
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub total: usize,
    pub invalid: usize,
    pub incorrect: usize,
    pub correct: usize,
}

impl ClassCounts {
    fn add(&mut self, class: &Class) {
        self.total += 1;
        match class {
            Class::Invalid(_) => self.invalid += 1,
            Class::Incorrect => self.incorrect += 1,
            Class::Correct => self.correct += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Percentages {
    pub invalid: f64,
    pub incorrect: f64,
    pub correct: f64,
}

/// `100 * count / total` rounded half away from zero to one decimal.
pub fn percent_one_decimal(count: usize, total: usize) -> f64 {
    assert!(total > 0);
    let (count, total) = (count as u128, total as u128);
    let tenths = (2000 * count + total) / (2 * total);
    tenths as f64 / 10.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub kind: Option<PuzzleKind>,
    #[serde(flatten)]
    pub counts: ClassCounts,
    pub percentages: Percentages,
    pub invalid_reasons: BTreeMap<String, usize>,
    /// Progress histograms over parsed (non-invalid) samples.
    pub histograms: BTreeMap<String, BTreeMap<String, usize>>,
    pub by_group: BTreeMap<String, ClassCounts>,
}

pub fn aggregate(verdicts: &[SampleVerdict]) -> Result<EvalReport, EvalError> {
    if verdicts.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut counts = ClassCounts::default();
    let mut invalid_reasons = BTreeMap::new();
    let mut histograms: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut by_group: BTreeMap<String, ClassCounts> = BTreeMap::new();
    let mut bump = |name: &str, key: String| {
        *histograms
            .entry(name.to_string())
            .or_default()
            .entry(key)
            .or_default() += 1;
    };
    for v in verdicts {
        counts.add(&v.class);
        if let Class::Invalid(reason) = &v.class {
            *invalid_reasons
                .entry(reason.label().to_string())
                .or_default() += 1;
        }
        if let Some(group) = &v.group {
            by_group.entry(group.clone()).or_default().add(&v.class);
        }
        if v.is_invalid() {
            continue;
        }
        match v.progress {
            Some(Progress::Cube(p)) => {
                bump("solved_faces", p.solved_faces.to_string());
                bump(
                    "rows_and_columns",
                    format!("{:02}", p.solved_rows_and_columns),
                );
            }
            Some(Progress::Sudoku { filled, violations }) => {
                bump("filled_cells", format!("{filled:02}"));
                bump("violations", format!("{violations:02}"));
            }
            Some(Progress::Maze { fraction }) => {
                let decile = ((fraction * 10.0).floor() as usize).min(10);
                bump("path_progress", format!("{:.1}", decile as f64 / 10.0));
            }
            None => {}
        }
    }
    let kind = verdicts
        .iter()
        .all(|v| v.kind == verdicts[0].kind)
        .then_some(verdicts[0].kind);
    Ok(EvalReport {
        kind,
        percentages: Percentages {
            invalid: percent_one_decimal(counts.invalid, counts.total),
            incorrect: percent_one_decimal(counts.incorrect, counts.total),
            correct: percent_one_decimal(counts.correct, counts.total),
        },
        counts,
        invalid_reasons,
        histograms,
        by_group,
    })
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = self.kind.map_or("mixed".to_string(), |k| k.to_string());
        let c = &self.counts;
        let p = &self.percentages;
        let _ = writeln!(out, "kind       {kind}");
        let _ = writeln!(out, "total      {:>6}", c.total);
        let _ = writeln!(out, "invalid    {:>6}  {:>5.1}%", c.invalid, p.invalid);
        let _ = writeln!(out, "incorrect  {:>6}  {:>5.1}%", c.incorrect, p.incorrect);
        let _ = writeln!(out, "correct    {:>6}  {:>5.1}%", c.correct, p.correct);
        if !self.invalid_reasons.is_empty() {
            let _ = writeln!(out, "\ninvalid reasons");
            for (reason, n) in &self.invalid_reasons {
                let _ = writeln!(out, "  {reason:<16} {n:>6}");
            }
        }
        if !self.by_group.is_empty() {
            let _ = writeln!(
                out,
                "\n{:<14} {:>6} {:>8} {:>10} {:>8}",
                "group", "total", "invalid", "incorrect", "correct"
            );
            for (group, g) in &self.by_group {
                let _ = writeln!(
                    out,
                    "{group:<14} {:>6} {:>8} {:>10} {:>8}",
                    g.total, g.invalid, g.incorrect, g.correct
                );
            }
        }
        for (name, hist) in &self.histograms {
            let _ = writeln!(out, "\n{name}");
            for (bucket, n) in hist {
                let _ = writeln!(out, "  {bucket:>5} {n:>6}");
            }
        }
        out
    }
}

/// The response part of a model output line: text after `[RESPONSE]` when
/// present, cut at the end-of-text token.
pub fn extract_response(output: &str) -> &str {
    let text = match output.find(RESPONSE_TOKEN) {
        Some(i) => &output[i + RESPONSE_TOKEN.len()..],
        None => output,
    };
    let text = match text.find(END_TOKEN) {
        Some(i) => &text[..i],
        None => text,
    };
    text.trim()
}

#[derive(Debug, Clone, Default)]
pub struct Ingested {
    pub verdicts: Vec<SampleVerdict>,
    /// 1-based line numbers of prompts that failed to decode.
    pub skipped: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Scoring {
    pub cube: CubeScoring,
    pub sudoku: SudokuScoring,
}

/// Score line-aligned prompts and outputs (cube or sudoku).
pub fn score_lines(
    kind: PuzzleKind,
    prompts: &str,
    outputs: &str,
    scoring: &Scoring,
) -> Result<Ingested, EvalError> {
    let prompts: Vec<&str> = prompts.lines().collect();
    let outputs: Vec<&str> = outputs.lines().collect();
    if prompts.len() != outputs.len() {
        return Err(EvalError::LineCountMismatch {
            prompts: prompts.len(),
            outputs: outputs.len(),
        });
    }
    let results: Vec<Result<SampleVerdict, EvalError>> = map_pairs(
        prompts.into_iter().zip(outputs).collect(),
        |(prompt, output)| {
            let prompt = prompt.trim();
            let response = extract_response(output);
            match kind {
                PuzzleKind::Cube => classify_cube(prompt, response, &scoring.cube),
                PuzzleKind::Sudoku => classify_sudoku(prompt, response, &scoring.sudoku),
                PuzzleKind::Maze => Ok(classify_maze(output)),
            }
        },
    );
    let mut out = Ingested::default();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => out.verdicts.push(v),
            Err(e) => out.skipped.push((i + 1, e.to_string())),
        }
    }
    Ok(out)
}

/// Line written between generated samples, as gpt-2-simple does.
pub const SAMPLE_DELIMITER: &str = "====================";

/// Join samples into one text, each followed by a delimiter line.
pub fn join_samples<S: AsRef<str>>(samples: &[S]) -> String {
    let mut out = String::new();
    for s in samples {
        out.push_str(s.as_ref());
        out.push('\n');
        out.push_str(SAMPLE_DELIMITER);
        out.push('\n');
    }
    out
}

/// Split generated text into samples. Text with delimiter lines is cut at
/// them; otherwise each sample runs from one start token to the next.
pub fn split_samples(text: &str) -> Vec<&str> {
    let mut pieces = Vec::new();
    let mut from = 0;
    let mut at = 0;
    let mut delimited = false;
    for line in text.split_inclusive('\n') {
        if line.trim_end_matches(['\n', '\r']) == SAMPLE_DELIMITER {
            pieces.push(text[from..at].strip_suffix('\n').unwrap_or(&text[from..at]));
            from = at + line.len();
            delimited = true;
        }
        at += line.len();
    }
    if delimited {
        if !text[from..].trim().is_empty() {
            pieces.push(&text[from..]);
        }
        return pieces;
    }
    let mut starts: Vec<usize> = text.match_indices(START_TOKEN).map(|(i, _)| i).collect();
    starts.push(text.len());
    starts.windows(2).map(|w| &text[w[0]..w[1]]).collect()
}

/// Score generated maze samples; see [`split_samples`] for how the text is
/// cut. Unterminated samples are scored too (as invalid).
pub fn score_maze_stream(outputs: &str) -> Vec<SampleVerdict> {
    map_pairs(split_samples(outputs), classify_maze)
}

/// Read the prompts/outputs files and score them. Maze scoring ignores
/// `prompts` since maze samples are generated unconditionally.
pub fn ingest_external_outputs(
    kind: PuzzleKind,
    prompts: Option<&Path>,
    outputs: &Path,
    scoring: &Scoring,
) -> Result<Ingested, EvalError> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| EvalError::File(format!("{}: {e}", p.display())))
    };
    let outputs = read(outputs)?;
    match kind {
        PuzzleKind::Maze => Ok(Ingested {
            verdicts: score_maze_stream(&outputs),
            skipped: Vec::new(),
        }),
        _ => {
            let prompts = prompts
                .ok_or_else(|| EvalError::File("a prompts file is required".into()))
                .and_then(read)?;
            score_lines(kind, &prompts, &outputs, scoring)
        }
    }
}

/// Score a corpus against its own responses; every record should be correct.
pub fn self_score(
    records: &[corpus::PuzzleRecord],
    scoring: &Scoring,
) -> Result<Vec<SampleVerdict>, EvalError> {
    records
        .iter()
        .map(|r| match r.kind {
            PuzzleKind::Cube => classify_cube(&r.prompt, &r.response, &scoring.cube),
            PuzzleKind::Sudoku => classify_sudoku(&r.prompt, &r.response, &scoring.sudoku),
            PuzzleKind::Maze => Ok(classify_maze(&r.serialize())),
        })
        .collect()
}

fn map_pairs<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
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
