use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use puzzle_notation::corpus::{self, PuzzleKind, PuzzleRecord};
use puzzle_notation::cube::{self, FaceletCube, Formula};
use puzzle_notation::eval::{self, CubeScoring, Scoring, SudokuScoring};
use puzzle_notation::markov::{CharMarkovModel, SampleOptions};
use puzzle_notation::maze::{self, Maze, Strategy};
use puzzle_notation::rng::derive_seed;
use puzzle_notation::sudoku::{render_sudoku, SudokuGrid};
use rayon::prelude::*;

use crate::{
    Command, GenCommand, IngestCommand, KindArg, OutArgs, RenderCommand, SampleArgs, ScoreArgs,
    SolveCommand, SplitArgs, StrategyArg, TrainArgs,
};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen(g) => gen(g),
        Command::Ingest(IngestCommand::SudokuCsv { input, out }) => {
            let ingest = corpus::ingest_sudoku_csv(&input)?;
            for rejected in &ingest.rejected {
                eprintln!("{}: {rejected}", input.display());
            }
            eprintln!(
                "accepted {} rows, rejected {}",
                ingest.records.len(),
                ingest.rejected.len()
            );
            write_corpus(&ingest.records, &out)
        }
        Command::Split(s) => split(s),
        Command::Solve(s) => solve(s),
        Command::Render(r) => render(r),
        Command::Train(t) => train(t),
        Command::Sample(s) => sample(s),
        Command::Score(s) => score(s),
    }
}

/// Write through a temporary file in the target directory and rename it
/// into place, so a failed run never leaves a truncated file behind.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn sidecar_path(out: &OutArgs) -> Option<PathBuf> {
    out.meta.clone().or_else(|| {
        out.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".meta.jsonl");
            PathBuf::from(s)
        })
    })
}

fn write_corpus(records: &[PuzzleRecord], out: &OutArgs) -> Result<()> {
    let text = corpus::corpus_text(records);
    let meta = corpus::meta_jsonl(records);
    emit(out.out.as_deref(), &text)?;
    if let Some(p) = sidecar_path(out) {
        write_atomic(&p, &meta)?;
    }
    Ok(())
}

fn gen(g: GenCommand) -> Result<()> {
    let (records, out) = match g {
        GenCommand::Cube {
            seed,
            total,
            max_scramble,
            out,
        } => (corpus::build_cube_corpus(seed, total, max_scramble)?, out),
        GenCommand::Sudoku {
            seed,
            total,
            min_clues,
            max_clues,
            out,
        } => (
            corpus::build_sudoku_corpus(seed, total, (min_clues, max_clues))?,
            out,
        ),
        GenCommand::Maze {
            seed,
            total,
            sizes,
            out,
        } => (corpus::build_maze_corpus(seed, total, &sizes.0)?, out),
    };
    eprintln!("generated {} records", records.len());
    write_corpus(&records, &out)
}

fn split(s: SplitArgs) -> Result<()> {
    let records = corpus::parse_corpus(&read(&s.input)?)?;
    let n = records.len();
    let split = corpus::dedup_and_split(records, s.seed, s.test_fraction)?;
    eprintln!(
        "{n} records, {} unique: {} train, {} test",
        split.train.len() + split.test.len(),
        split.train.len(),
        split.test.len()
    );
    let line_of = |text: &str, what: &str| -> Result<String> {
        if text.contains('\n') {
            bail!(
                "{what} spans several lines; line-aligned files hold cube and sudoku records only"
            );
        }
        Ok(text.to_string())
    };
    let mut prompts = String::new();
    let mut responses = String::new();
    if s.test_prompts.is_some() || s.test_responses.is_some() {
        for r in &split.test {
            prompts.push_str(&line_of(&r.prompt, "a prompt")?);
            prompts.push('\n');
            responses.push_str(&line_of(&r.response, "a response")?);
            responses.push('\n');
        }
    }
    write_atomic(&s.train, &corpus::corpus_text(&split.train))?;
    write_atomic(&s.test, &corpus::corpus_text(&split.test))?;
    if let Some(p) = &s.test_prompts {
        write_atomic(p, &prompts)?;
    }
    if let Some(p) = &s.test_responses {
        write_atomic(p, &responses)?;
    }
    Ok(())
}

fn read_maze(file: Option<&Path>) -> Result<Maze> {
    let text = match file {
        Some(p) => read(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(Maze::parse(text.trim_end_matches('\n'))?.0)
}

fn solve(s: SolveCommand) -> Result<()> {
    match s {
        SolveCommand::Cube { state, max_depth } => {
            let c = FaceletCube::decode(state.trim())?;
            println!("{}", cube::solve(&c, max_depth)?);
        }
        SolveCommand::Sudoku { grid, pretty } => {
            let solved = SudokuGrid::parse(grid.trim())?.solve()?;
            if pretty {
                println!("{}", render_sudoku(&solved, &[]));
            } else {
                println!("{}", solved.format());
            }
        }
        SolveCommand::Maze { file, strategy } => {
            let m = read_maze(file.as_deref())?;
            let strategy = match strategy {
                StrategyArg::Bfs => Strategy::Bfs,
                StrategyArg::Dfs => Strategy::Dfs,
            };
            let path = m.solve(strategy)?;
            println!("{}", m.render(Some(&path))?);
        }
    }
    Ok(())
}

fn render(r: RenderCommand) -> Result<()> {
    match r {
        RenderCommand::Cube { state, formula } => {
            let c = match (state, formula) {
                (Some(s), _) => FaceletCube::decode(s.trim())?,
                (None, Some(f)) => FaceletCube::solved().apply_formula(&Formula::parse(&f)?),
                (None, None) => FaceletCube::solved(),
            };
            println!("{}", cube::render_cube_net(&c));
        }
        RenderCommand::Sudoku {
            grid,
            mark_violations,
        } => {
            let g = SudokuGrid::parse(grid.trim())?;
            let marks = if mark_violations {
                g.find_violations()
            } else {
                Vec::new()
            };
            println!("{}", render_sudoku(&g, &marks));
        }
        RenderCommand::Maze {
            file,
            seed,
            width,
            height,
            solved,
        } => {
            let m = match (file, seed) {
                (Some(p), _) => read_maze(Some(&p))?,
                (None, Some(seed)) => maze::generate_maze(seed, width, height)?,
                (None, None) => bail!("give either --file or --seed"),
            };
            let path = if solved {
                Some(m.solve(Strategy::Bfs)?)
            } else {
                None
            };
            println!("{}", m.render(path.as_ref())?);
        }
    }
    Ok(())
}

fn train(t: TrainArgs) -> Result<()> {
    let text = read(&t.corpus)?;
    let model = CharMarkovModel::train(&text, t.order, t.alpha)?;
    eprintln!(
        "order {}, {} symbols, {} contexts",
        model.order(),
        model.alphabet().len(),
        model.context_count()
    );
    write_atomic(&t.out, &model.save())
}

/// Turn the two-character escape `\n` into a newline so prefixes can be
/// given on the command line.
fn unescape(s: &str) -> String {
    s.replace("\\n", "\n")
}

fn sample(s: SampleArgs) -> Result<()> {
    let model = CharMarkovModel::load(&read(&s.model)?)?;
    let opts = |i: usize| SampleOptions {
        max_chars: s.max_chars,
        seed: derive_seed(s.seed, i as u64),
        temperature: s.temperature,
    };
    let text = match &s.prompts {
        Some(p) => {
            let prompts = read(p)?;
            let lines: Vec<&str> = prompts.lines().collect();
            let outs: Vec<String> = lines
                .par_iter()
                .enumerate()
                .map(|(i, prompt)| {
                    let framed = format!(
                        "{}{} {} {} ",
                        corpus::START_TOKEN,
                        corpus::PROMPT_TOKEN,
                        prompt.trim(),
                        corpus::RESPONSE_TOKEN
                    );
                    let cont = model.sample(&framed, opts(i));
                    let cut = cont
                        .find(corpus::END_TOKEN)
                        .into_iter()
                        .chain(cont.find('\n'))
                        .min()
                        .unwrap_or(cont.len());
                    cont[..cut].trim().to_string()
                })
                .collect();
            outs.into_iter().map(|l| l + "\n").collect::<String>()
        }
        None => {
            let prefix = unescape(&s.prefix);
            let outs: Vec<String> = (0..s.count)
                .into_par_iter()
                .map(|i| prefix.clone() + &model.sample(&prefix, opts(i)))
                .collect();
            eval::join_samples(&outs)
        }
    };
    emit(s.out.as_deref(), &text)
}

fn score(s: ScoreArgs) -> Result<()> {
    let kind = match s.kind {
        KindArg::Cube => PuzzleKind::Cube,
        KindArg::Sudoku => PuzzleKind::Sudoku,
        KindArg::Maze => PuzzleKind::Maze,
    };
    if kind != PuzzleKind::Maze && s.prompts.is_none() {
        bail!("--prompts is required when scoring {kind} outputs");
    }
    let scoring = Scoring {
        cube: CubeScoring {
            max_response_chars: s.max_chars,
            ..CubeScoring::default()
        },
        sudoku: SudokuScoring {
            require_clues: !s.ignore_clues,
        },
    };
    let ingested = eval::ingest_external_outputs(kind, s.prompts.as_deref(), &s.outputs, &scoring)?;
    for (line, err) in &ingested.skipped {
        eprintln!("prompt line {line} skipped: {err}");
    }
    let report = eval::aggregate(&ingested.verdicts)?;
    if let Some(p) = &s.verdicts {
        let mut lines = String::new();
        for v in &ingested.verdicts {
            lines.push_str(&serde_json::to_string(v)?);
            lines.push('\n');
        }
        write_atomic(p, &lines)?;
    }
    if s.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}
