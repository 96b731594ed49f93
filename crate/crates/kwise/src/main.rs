use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use kwise_core::distance::profile_distance;
use kwise_core::majority::{
    kwise_digraph, refine_digraph, scc_decompose, solve_preprocessed_with, DigraphOptions, PreprocessOptions,
};
use kwise_core::sampling::{impartial_culture, mallows_sample, MallowsParams};
use kwise_core::solver::{brute_force_consensus, dp_consensus, enumerate_consensus, DEFAULT_ENUMERATION_LIMIT};
use kwise_core::{Profile, Ranking};
use serde_json::json;

use kwise::bench::{run_experiment, ExperimentConfig, KSpec, Mode};
use kwise::dot::to_dot;
use kwise::format::{one_based, parse_ranking, read_profile, serialize_profile};
use kwise::output::{DigraphOutput, DistanceOutput, SolveOutput};
use kwise::parallel::par_dp_consensus;
use kwise::AppError;

/// k-wise Kemeny rank aggregation.
#[derive(Parser)]
#[command(name = "kwise", version, about)]
struct Cli {
    /// Profile file (`.soc` for PrefLib, anything else for the native format).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Largest contest set size.
    #[arg(long, global = true, default_value_t = 3)]
    k: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// k-wise distance between a ranking and the profile.
    Distance {
        /// 1-based comma separated ranking, most preferred first.
        ranking: String,
    },
    /// Consensus ranking(s), printed as JSON.
    Solve(SolveArgs),
    /// The k-wise majority digraph, as JSON or DOT.
    Digraph(DigraphArgs),
    /// Draw a random profile in the native format.
    Sample(SampleArgs),
    /// Run an experiment grid; CSV on stdout, or JSON with --json.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "dp")]
    mode: Mode,
    /// Report every consensus ranking (consistent with the component order for pre modes).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,
    /// Evaluate each DP layer on all cores (dp mode, single ranking).
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct DigraphArgs {
    #[arg(long)]
    refine: bool,
    #[arg(long)]
    dot: bool,
    /// Allow the exponential construction needed for k >= 4.
    #[arg(long)]
    force_exponential: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 50)]
    n: usize,
    /// Mallows dispersion in (0, 1]; impartial culture when omitted.
    #[arg(long)]
    phi: Option<f64>,
    /// Mallows reference ranking, 1-based; identity when omitted.
    #[arg(long)]
    reference: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [6, 10, 14])]
    ms: Vec<usize>,
    /// Integers or `m` for k = m.
    #[arg(long, value_delimiter = ',', default_values = ["2", "3", "m"])]
    ks: Vec<KSpec>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.8, 0.85, 0.9, 0.95, 1.0])]
    phis: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    instances: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["dp"])]
    modes: Vec<Mode>,
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,
    #[arg(long)]
    threads: Option<usize>,
    /// Let pre modes build digraphs for k >= 4 by exhaustive search.
    #[arg(long)]
    force_exponential: bool,
    /// Also write the CSV table here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

fn input(cli: &Cli) -> Result<Profile, AppError> {
    let path = cli.input.as_deref().ok_or_else(|| AppError::Usage("--input <file> is required".into()))?;
    read_profile(path)
}

fn write_file(path: &Path, contents: &str) -> Result<(), AppError> {
    fs::write(path, contents).map_err(|source| AppError::Io { path: path.to_owned(), source })
}

fn run(cli: &Cli) -> Result<String, AppError> {
    let k = cli.k;
    match &cli.command {
        Command::Distance { ranking } => {
            let profile = input(cli)?;
            let r = parse_ranking(ranking, profile.m()).map_err(AppError::Ranking)?;
            let distance = profile_distance(&r, &profile, k)?;
            if cli.json {
                Ok(serde_json::to_string_pretty(&DistanceOutput { k, ranking: one_based(&r), distance })?)
            } else {
                Ok(distance.to_string())
            }
        }
        Command::Solve(args) => {
            let profile = input(cli)?;
            let start = Instant::now();
            let result = match args.mode {
                Mode::Brute => {
                    let mut all = brute_force_consensus(&profile, k)?;
                    if !args.all {
                        all.rankings.truncate(1);
                    } else if all.rankings.len() > args.limit {
                        all.rankings.truncate(args.limit);
                        all.truncated = true;
                    }
                    all
                }
                Mode::Dp if args.all => enumerate_consensus(&profile, k, args.limit)?,
                Mode::Dp if args.parallel => par_dp_consensus(&profile, k)?,
                Mode::Dp => dp_consensus(&profile, k)?,
                Mode::Pre | Mode::PreRefined => {
                    let options = PreprocessOptions {
                        refine: args.mode == Mode::PreRefined,
                        limit: args.all.then_some(args.limit),
                        ..Default::default()
                    };
                    solve_preprocessed_with(&profile, k, &options, &mut || false)?.result
                }
            };
            let millis = start.elapsed().as_millis() as u64;
            Ok(serde_json::to_string_pretty(&SolveOutput::new(args.mode.name(), k, &result, millis))?)
        }
        Command::Digraph(args) => {
            let profile = input(cli)?;
            let options = DigraphOptions { force_exponential: args.force_exponential };
            let graph = kwise_digraph(&profile, k, options)?;
            let order = scc_decompose(&graph);
            let (graph, order, removed) = if args.refine {
                let r = refine_digraph(&graph, &profile, &order)?;
                (r.digraph, r.order, r.removed)
            } else {
                (graph, order, Vec::new())
            };
            if args.dot {
                Ok(to_dot(&graph, Some(&order)).trim_end().to_string())
            } else {
                Ok(serde_json::to_string_pretty(&DigraphOutput::new(&graph, &order, &removed))?)
            }
        }
        Command::Sample(args) => {
            let profile = match args.phi {
                None => impartial_culture(args.m, args.n, cli.seed)?,
                Some(phi) => {
                    let reference = match &args.reference {
                        Some(spec) => parse_ranking(spec, args.m).map_err(AppError::Ranking)?,
                        None => Ranking::identity(args.m),
                    };
                    mallows_sample(&MallowsParams::new(reference, phi, args.n, cli.seed)?)?
                }
            };
            if cli.json {
                let groups: Vec<_> = profile
                    .groups()
                    .iter()
                    .map(|g| json!({ "count": g.count, "ranking": one_based(&g.ranking) }))
                    .collect();
                Ok(serde_json::to_string_pretty(&json!({ "m": profile.m(), "n": profile.n(), "groups": groups }))?)
            } else {
                Ok(serialize_profile(&profile).trim_end().to_string())
            }
        }
        Command::Bench(args) => {
            let config = ExperimentConfig {
                ms: args.ms.clone(),
                ks: args.ks.clone(),
                phis: args.phis.clone(),
                n: args.n,
                instances: args.instances,
                seed: cli.seed,
                modes: args.modes.clone(),
                timeout: args.timeout_ms.map(Duration::from_millis),
                enumeration_limit: args.limit,
                threads: args.threads,
                force_exponential: args.force_exponential,
            };
            let report = run_experiment(&config)?;
            let csv = report.to_csv()?;
            let json = serde_json::to_string_pretty(&report)?;
            if let Some(path) = &args.csv {
                write_file(path, &csv)?;
            }
            if let Some(path) = &args.json_out {
                write_file(path, &json)?;
            }
            Ok(if cli.json { json } else { csv.trim_end().to_string() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
