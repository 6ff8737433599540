use std::fs;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use topogames::constructions::EnumMode;
use topogames::game::{GameGoal, SolverConfig};
use topogames_cli::play::{play_session, HumanSide};
use topogames_cli::records::{analyze, enumerate, export_csv, AnalyzeRecord};
use topogames_cli::reports::{name_transcript, solve, strategy_report, GoalKind, SolveRequest, Which};
use topogames_cli::suite::{render_table, run_verify, Suite, VerifyConfig};
use topogames_cli::load_space;

#[derive(Parser)]
#[command(name = "topogames", version, about = "Seeker/Hider games on finite T0 spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// ps, sm, psw0 and predicates of space files.
    Analyze {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Analyze every T0 space with up to --max-n points.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Every labeled order instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the invariant suites over the corpus of spaces with up to --max-n points.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Game value, optional horizon decision, strategy and optimal play.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ps")]
        goal: GoalKind,
        /// Target point names for the sm goal, e.g. "a,c". Without it, sm(X).
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        horizon: Option<u32>,
        #[arg(long)]
        emit_strategy: bool,
        #[arg(long)]
        emit_transcript: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build, tabulate and exhaustively check one constructive strategy.
    Strategies {
        #[arg(long, value_enum)]
        which: Which,
        /// One space; sum, summem and colelim take one per summand, product two.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        /// Target point names; summands' points are named "i.name".
        #[arg(long)]
        target: Option<String>,
        /// Horizon for the greedy Hider.
        #[arg(long)]
        horizon: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Play one side against the engine in the terminal.
    Play {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        side: HumanSide,
        #[arg(long, value_enum, default_value = "ps")]
        goal: GoalKind,
        #[arg(long)]
        target: Option<String>,
        /// Rounds allowed when the human is the Seeker.
        #[arg(long)]
        horizon: Option<u32>,
        /// Where to save the transcript JSON.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Turn analysis records (JSON) into a table sorted by (n, code).
    Export {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn jobs(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool(requested: Option<usize>) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(jobs(requested))
        .build()?)
}

fn table(records: &[AnalyzeRecord], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            for w in export_csv(records, &mut buf)? {
                warn!("{w}");
            }
            Ok(String::from_utf8(buf)?)
        }
        Format::Json => json(&records),
    }
}

fn goal_for(named: &topogames::format::NamedSpace, goal: GoalKind, target: Option<&str>) -> Result<GameGoal> {
    Ok(match (goal, target) {
        (GoalKind::Ps, None) => GameGoal::PointSeparating,
        (GoalKind::Ps, Some(_)) => bail!("--target applies to --goal sm only"),
        (GoalKind::Sm, Some(list)) => GameGoal::membership(named.parse_set(list)?),
        (GoalKind::Sm, None) => bail!("--goal sm needs --target here"),
    })
}

fn read_records(path: &Path) -> Result<Vec<AnalyzeRecord>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let records = match value {
        serde_json::Value::Array(items) => items
            .into_iter()
            .map(serde_json::from_value)
            .collect::<Result<Vec<AnalyzeRecord>, _>>(),
        other => serde_json::from_value(other).map(|r| vec![r]),
    };
    records.with_context(|| format!("{} does not hold analysis records", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let solver = SolverConfig::from_env();
    match cli.command {
        Command::Analyze {
            input,
            format,
            jobs,
            out,
        } => {
            let spaces = input.iter().map(|p| load_space(p)).collect::<Result<Vec<_>>>()?;
            let records = pool(jobs)?.install(|| {
                use rayon::prelude::*;
                spaces
                    .par_iter()
                    .map(|s| analyze(&s.space, &solver))
                    .collect::<Result<Vec<_>>>()
            })?;
            let text = match (format, records.as_slice()) {
                (Format::Json, [one]) => json(one)?,
                _ => table(&records, format)?,
            };
            emit(&out, &text)?;
        }
        Command::Enumerate {
            max_n,
            labeled,
            format,
            jobs,
            out,
        } => {
            let mode = if labeled { EnumMode::Labeled } else { EnumMode::UpToIso };
            let spaces = pool(jobs)?.install(|| enumerate(max_n, mode, &solver))?;
            info!("{} spaces", spaces.len());
            let text = match format {
                Format::Json => json(&spaces)?,
                Format::Csv => {
                    let records: Vec<AnalyzeRecord> = spaces.into_iter().map(|s| s.record).collect();
                    table(&records, Format::Csv)?
                }
            };
            emit(&out, &text)?;
        }
        Command::Verify {
            suite,
            max_n,
            jobs: j,
            seed,
            format,
            out,
        } => {
            let config = VerifyConfig {
                suite,
                max_n,
                jobs: jobs(j),
                seed,
                solver,
            };
            let result = run_verify(&config)?;
            let report = match format {
                Format::Json => json(&result)?,
                Format::Csv => {
                    let mut text = String::from("predicate,passed,failed\n");
                    for r in &result.reports {
                        text += &format!("{},{},{}\n", r.predicate, r.passed, r.failed);
                    }
                    text
                }
            };
            // the table goes wherever the machine report does not
            if out.output.is_some() {
                print!("{}", render_table(&result));
            } else {
                eprint!("{}", render_table(&result));
            }
            emit(&out, &report)?;
            if !result.ok() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Solve {
            input,
            goal,
            target,
            horizon,
            emit_strategy,
            emit_transcript,
            out,
        } => {
            let named = load_space(&input)?;
            let target = match (goal, target) {
                (GoalKind::Ps, None) => None,
                (GoalKind::Ps, Some(_)) => bail!("--target applies to --goal sm only"),
                (GoalKind::Sm, t) => Some(t.map(|list| named.parse_set(&list)).transpose()?),
            };
            let request = SolveRequest {
                target,
                horizon,
                emit_strategy,
                emit_transcript,
            };
            emit(&out, &json(&solve(&named, &request, &solver)?)?)?;
        }
        Command::Strategies {
            which,
            input,
            target,
            horizon,
            out,
        } => {
            let parts = input.iter().map(|p| load_space(p)).collect::<Result<Vec<_>>>()?;
            let report = strategy_report(which, &parts, target.as_deref(), horizon)?;
            emit(&out, &json(&report)?)?;
        }
        Command::Play {
            input,
            side,
            goal,
            target,
            horizon,
            output,
        } => {
            let named = load_space(&input)?;
            let goal = goal_for(&named, goal, target.as_deref())?;
            let stdin = io::stdin();
            let t = play_session(&named, goal, side, horizon, BufReader::new(stdin.lock()), io::stdout())?;
            let text = json(&name_transcript(&named, &t)?)?;
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    println!("transcript saved to {}", path.display());
                }
                None => print!("{text}"),
            }
        }
        Command::Export { input, format, out } => {
            let mut records = Vec::new();
            for path in &input {
                records.extend(read_records(path)?);
            }
            let text = match format {
                Format::Csv => table(&records, Format::Csv)?,
                Format::Json => {
                    records.sort_by(|a, b| (a.n, &a.code).cmp(&(b.n, &b.code)));
                    let before = records.len();
                    records.dedup_by(|a, b| a.code == b.code);
                    if records.len() < before {
                        warn!("{} duplicate codes dropped", before - records.len());
                    }
                    json(&records)?
                }
            };
            emit(&out, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
