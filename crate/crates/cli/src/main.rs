//! `puzzlenote`: generate puzzle corpora, train and sample the baseline
//! model, score generated text, and solve or render single puzzles.

mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use puzzle_notation::corpus::FORMAT_VERSION;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "puzzlenote",
    version,
    about = "Puzzle corpora, baseline model and scoring"
)]
pub struct Cli {
    /// Worker threads for record construction and scoring.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a corpus file and its metadata sidecar.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Import external data.
    #[command(subcommand)]
    Ingest(IngestCommand),
    /// Deduplicate a corpus and split it into train and test files.
    Split(SplitArgs),
    /// Solve a single puzzle.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Draw a single puzzle as text.
    #[command(subcommand)]
    Render(RenderCommand),
    /// Train the character Markov model on a corpus.
    Train(TrainArgs),
    /// Draw samples from a trained model.
    Sample(SampleArgs),
    /// Score generated outputs.
    Score(ScoreArgs),
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Corpus file; written to stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Metadata sidecar. Defaults to `<out>.meta.jsonl` when `--out` is set.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    Cube {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        total: usize,
        /// Scrambles run from 1 to this many moves, equally many per length.
        #[arg(long, default_value_t = 5)]
        max_scramble: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    Sudoku {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        total: usize,
        #[arg(long, default_value_t = 25)]
        min_clues: usize,
        #[arg(long, default_value_t = 35)]
        max_clues: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    Maze {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        total: usize,
        /// Comma-separated sizes, cycled through record by record.
        #[arg(long, default_value = "4x4,5x5", value_parser = parse_sizes)]
        sizes: Sizes,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone)]
pub struct Sizes(pub Vec<(usize, usize)>);

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((n(w)?, n(h)?))
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    s.split(',')
        .map(parse_size)
        .collect::<Result<_, _>>()
        .map(Sizes)
}

#[derive(Subcommand, Debug)]
pub enum IngestCommand {
    /// Read `puzzle,solution` rows; rows that fail validation are reported
    /// on stderr and skipped.
    SudokuCsv {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.2)]
    pub test_fraction: f64,
    #[arg(long)]
    pub train: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    /// Also write test prompts, one per line (cube and sudoku only).
    #[arg(long)]
    pub test_prompts: Option<PathBuf>,
    /// Also write test responses, line-aligned with `--test-prompts`.
    #[arg(long)]
    pub test_responses: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SolveCommand {
    Cube {
        /// 54-facelet string.
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = puzzle_notation::cube::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    Sudoku {
        /// 81 characters, `0` for blanks.
        #[arg(long)]
        grid: String,
        /// Print the framed grid instead of the 81-character line.
        #[arg(long)]
        pretty: bool,
    },
    Maze {
        /// Rendered maze; read from stdin when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Bfs)]
        strategy: StrategyArg,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum StrategyArg {
    Bfs,
    Dfs,
}

#[derive(Subcommand, Debug)]
pub enum RenderCommand {
    Cube {
        #[arg(long, conflicts_with = "formula")]
        state: Option<String>,
        /// Apply this formula to the solved cube and draw the result.
        #[arg(long)]
        formula: Option<String>,
    },
    Sudoku {
        #[arg(long)]
        grid: String,
        /// Bracket the cells of every repeated digit.
        #[arg(long)]
        mark_violations: bool,
    },
    Maze {
        #[arg(long, conflicts_with_all = ["seed", "width", "height"])]
        file: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 4)]
        width: usize,
        #[arg(long, default_value_t = 4)]
        height: usize,
        /// Draw the shortest solution.
        #[arg(long)]
        solved: bool,
    },
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, default_value_t = puzzle_notation::markov::DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, default_value_t = puzzle_notation::markov::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Number of unconditional samples, written with a delimiter line after
    /// each.
    #[arg(long, default_value_t = 1, conflicts_with = "prompts")]
    pub count: usize,
    #[arg(long, default_value_t = puzzle_notation::markov::DEFAULT_MAX_CHARS)]
    pub max_chars: usize,
    #[arg(long, default_value_t = puzzle_notation::markov::DEFAULT_TEMPERATURE)]
    pub temperature: f64,
    /// Text every unconditional sample starts from.
    #[arg(long, default_value = "<|startoftext|>\n")]
    pub prefix: String,
    /// One prompt per line; writes one response per line.
    #[arg(long)]
    pub prompts: Option<PathBuf>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScoreArgs {
    #[arg(value_enum)]
    pub kind: KindArg,
    /// Prompts, one per line (cube and sudoku).
    #[arg(long)]
    pub prompts: Option<PathBuf>,
    /// Generated outputs: one per line, or framed records for mazes.
    #[arg(long)]
    pub outputs: PathBuf,
    #[arg(long)]
    pub json: bool,
    /// Write one JSON verdict per sample to this file.
    #[arg(long)]
    pub verdicts: Option<PathBuf>,
    /// Score sudoku grids without requiring the clues to be kept.
    #[arg(long)]
    pub ignore_clues: bool,
    #[arg(long, default_value_t = puzzle_notation::eval::DEFAULT_RESPONSE_BUDGET)]
    pub max_chars: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Cube,
    Sudoku,
    Maze,
}

fn main() -> ExitCode {
    let version: &'static str = Box::leak(
        format!(
            "{} (corpus format {FORMAT_VERSION})",
            env!("CARGO_PKG_VERSION")
        )
        .into_boxed_str(),
    );
    let parsed = Cli::command()
        .version(version)
        .try_get_matches()
        .and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
