use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fiedler_core::admissibility::{
    check_corollary2, check_theorem2, extrema_verdict, AdmissibilityReport, CaterpillarSpec,
    ExtremaVerdict,
};
use fiedler_core::enumeration::{free_tree_count, FreeTrees};
use fiedler_core::game::{expected_encounters, simulate_payoff, GameSpec, DEFAULT_MAX_STEPS};
use fiedler_core::generators::{gen_caterpillar, Family};
use fiedler_core::hitting::hitting_times;
use fiedler_core::spectral::{
    bounds_report, eigenpair_k, verify_fiedler_connectivity, verify_monotonicity,
};
use fiedler_core::survey::{run_survey, SurveyConfig, DEFAULT_CHECKPOINT_EVERY};
use fiedler_core::{graph6, json, parse_edge_list, Error, Graph};

mod render;

/// Seed used by `game` unless `--seed` is given.
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(
    name = "fiedler",
    version,
    about = "Fiedler vectors, hitting times and the payoff game on trees"
)]
struct Cli {
    /// Worker threads for `game` and `survey` (default: all cores).
    #[arg(long, global = true, env = "FIEDLER_PARALLELISM")]
    parallelism: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenpair, bounds, extrema and monotonicity report for one graph.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Eigenpair index (2 = Fiedler pair).
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        property: PropertyArgs,
    },
    /// Exact and simulated expected payoff of the walk from `--from` to `--to`.
    Game {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u64,
    },
    /// Expected hitting times to a target set.
    Hit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Target vertices (repeat or comma-separate).
        #[arg(long, required = true, value_delimiter = ',')]
        target: Vec<usize>,
        /// Also report expected visits per vertex for walks from here.
        #[arg(long)]
        from: Option<usize>,
    },
    /// Admissibility along the longest path and the extrema verdict. Exits 1
    /// if the graph is not admissible, or with `--strict`/`--relaxed`, if
    /// that property fails.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Check a caterpillar given as `<spine>;<k>=<len>[/<len>...],...`.
        #[arg(long, conflicts_with_all = ["input", "family"])]
        caterpillar: Option<CaterpillarSpec>,
        #[command(flatten)]
        property: PropertyArgs,
    },
    /// Build a graph from a family, e.g. `gen rose-on-path 9 3 12`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every free tree on `--n` vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extrema census over every free tree on `--n` vertices.
    Survey {
        #[arg(long)]
        n: usize,
        /// File prefix for `.csv`, `.json`, `.checkpoint.json` (and `.g6`).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, requires = "output")]
        resume: bool,
        /// Count trees with a repeated λ₂ in the failure fractions.
        #[arg(long)]
        include_degenerate: bool,
        /// Also write each tree in graph6.
        #[arg(long, requires = "output")]
        graph6: bool,
        #[arg(long, default_value_t = DEFAULT_CHECKPOINT_EVERY)]
        checkpoint_every: usize,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Edge list or graph6 file; `-` reads standard input.
    #[arg(short, long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Generated input instead of a file, e.g. `P_10` or `rose-on-path 9 3 12`.
    #[arg(num_args = 0..)]
    family: Vec<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct PropertyArgs {
    /// Exit 1 unless the extrema form a unique diametral pair.
    #[arg(long, conflicts_with = "relaxed")]
    strict: bool,
    /// Exit 1 unless some maximiser and minimiser form a diametral pair.
    #[arg(long)]
    relaxed: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Graph6,
    Edges,
}

/// Outcome of a subcommand that ran to completion.
enum Verdict {
    Ok,
    PropertyFailed,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(e.into())
    }
}

type CliResult = std::result::Result<Verdict, CliError>;

fn read_graph(args: &InputArgs) -> Result<Graph, CliError> {
    match (&args.input, args.family.is_empty()) {
        (Some(path), true) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(path)
                    .map_err(|e| CliError::Core(Error::Io(format!("{}: {e}", path.display()))))?
            };
            Ok(parse_graph_text(&text)?)
        }
        (None, false) => Ok(parse_family(&args.family)?.build()?),
        (None, true) => Err(CliError::Usage(
            "no input: pass --input <file> or a family such as P_10".into(),
        )),
        (Some(_), false) => Err(CliError::Usage(
            "give either --input or a family, not both".into(),
        )),
    }
}

/// graph6 if the text is a single token (or carries the graph6 header),
/// an edge list otherwise.
fn parse_graph_text(text: &str) -> fiedler_core::Result<Graph> {
    let trimmed = text.trim();
    if trimmed.starts_with(">>graph6<<")
        || (!trimmed.is_empty()
            && !trimmed.contains(char::is_whitespace)
            && !trimmed.starts_with('#'))
    {
        graph6::decode(trimmed)
    } else {
        parse_edge_list(text)
    }
}

fn parse_family(words: &[String]) -> fiedler_core::Result<Family> {
    match words {
        [single] => single.parse(),
        [name, params @ ..] => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            Family::from_parts(name, &params)
        }
        [] => Err(Error::InvalidArgument("empty family".into())),
    }
}

fn emit(output: &OutputArgs, text: &str) -> io::Result<()> {
    match &output.output {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = json::to_string(value);
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> CliError {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    CliError::Usage(format!("--format {name} is not available for {command}"))
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    n: usize,
    m: usize,
    tree: bool,
    degenerate: bool,
    eigenpair: fiedler_core::spectral::EigenPairExport<'a>,
    fiedler_connected: bool,
    extrema: ExtremaVerdict,
    monotonicity: Option<fiedler_core::spectral::MonotonicityVerdict>,
    bounds: Option<fiedler_core::spectral::BoundsReport>,
}

fn cmd_analyze(
    input: &InputArgs,
    output: &OutputArgs,
    k: usize,
    property: &PropertyArgs,
) -> CliResult {
    let g = read_graph(input)?;
    g.require_connected()?;
    let pair = eigenpair_k(&g, k)?;
    let extrema = extrema_verdict(&g, &pair)?;
    let tree = g.is_tree();
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let (monotonicity, bounds) = if tree && k == 2 && g.n() > 1 {
                (
                    Some(verify_monotonicity(&g, &pair)?),
                    Some(bounds_report(&g, &pair)?),
                )
            } else {
                (None, None)
            };
            json_line(&AnalyzeReport {
                n: g.n(),
                m: g.m(),
                tree,
                degenerate: pair.degenerate,
                eigenpair: pair.export(),
                fiedler_connected: k == 2 && verify_fiedler_connectivity(&g, &pair),
                extrema: extrema.clone(),
                monotonicity,
                bounds,
            })
        }
        Format::Csv => render::vertex_csv("phi", &pair.phi),
        Format::Dot => render::dot(&g, Some(&pair.phi)),
        other => return Err(unsupported(other, "analyze")),
    };
    emit(output, &text)?;
    let failed = (property.strict && !extrema.strict) || (property.relaxed && !extrema.relaxed);
    Ok(if failed {
        Verdict::PropertyFailed
    } else {
        Verdict::Ok
    })
}

#[derive(Serialize)]
struct GameReport {
    start: usize,
    target: usize,
    k: usize,
    lambda: f64,
    predicted: f64,
    #[serde(flatten)]
    estimate: fiedler_core::game::PayoffEstimate,
}

#[allow(clippy::too_many_arguments)]
fn cmd_game(
    input: &InputArgs,
    output: &OutputArgs,
    from: usize,
    to: usize,
    k: usize,
    samples: u64,
    seed: u64,
    max_steps: u64,
) -> CliResult {
    let g = read_graph(input)?;
    g.require_connected()?;
    let pair = eigenpair_k(&g, k)?;
    let spec = GameSpec::new(&g, &pair, from, to)?;
    let estimate = simulate_payoff(&spec, samples, seed, max_steps)?;
    let report = GameReport {
        start: from,
        target: to,
        k,
        lambda: pair.lambda,
        predicted: spec.predicted(),
        estimate,
    };
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&report),
        Format::Csv => format!(
            "start,target,k,lambda,predicted,exact,mc_mean,mc_stderr,samples,seed,truncated_samples\n{},{},{},{},{},{},{},{},{},{},{}\n",
            report.start,
            report.target,
            report.k,
            json::format_f64(report.lambda),
            json::format_f64(report.predicted),
            json::format_f64(report.estimate.exact),
            json::format_f64(report.estimate.mc_mean),
            json::format_f64(report.estimate.mc_stderr),
            report.estimate.samples,
            report.estimate.seed,
            report.estimate.truncated_samples,
        ),
        other => return Err(unsupported(other, "game")),
    };
    emit(output, &text)?;
    let identity_holds = (report.estimate.exact - report.predicted).abs() <= 1e-8;
    Ok(if identity_holds {
        Verdict::Ok
    } else {
        Verdict::PropertyFailed
    })
}

#[derive(Serialize)]
struct HitReport {
    #[serde(flatten)]
    profile: fiedler_core::hitting::HittingProfile,
    encounters: Option<fiedler_core::game::EncounterProfile>,
}

fn cmd_hit(
    input: &InputArgs,
    output: &OutputArgs,
    targets: &[usize],
    from: Option<usize>,
) -> CliResult {
    let g = read_graph(input)?;
    let profile = hitting_times(&g, targets)?;
    let encounters = match from {
        Some(start) => {
            let [target] = targets else {
                return Err(CliError::Usage("--from needs exactly one --target".into()));
            };
            Some(expected_encounters(&g, *target, start)?)
        }
        None => None,
    };
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&HitReport {
            profile,
            encounters,
        }),
        Format::Csv => match &encounters {
            Some(e) => render::vertex_csv2(("h", &profile.h), ("visits", &e.visits)),
            None => render::vertex_csv("h", &profile.h),
        },
        other => return Err(unsupported(other, "hit")),
    };
    emit(output, &text)?;
    Ok(Verdict::Ok)
}

#[derive(Serialize)]
struct CheckReport<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    caterpillar: Option<String>,
    /// Leg-length rule for caterpillars.
    #[serde(skip_serializing_if = "Option::is_none")]
    leg_rule_holds: Option<bool>,
    #[serde(flatten)]
    report: &'a AdmissibilityReport,
    extrema: &'a ExtremaVerdict,
}

fn cmd_check(
    input: &InputArgs,
    output: &OutputArgs,
    caterpillar: Option<&CaterpillarSpec>,
    property: &PropertyArgs,
) -> CliResult {
    let g = match caterpillar {
        Some(spec) => gen_caterpillar(spec),
        None => read_graph(input)?,
    };
    let report = check_theorem2(&g)?;
    let extrema = extrema_verdict(&g, &fiedler_core::fiedler_pair(&g)?)?;
    let leg_rule_holds = caterpillar.map(check_corollary2);
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&CheckReport {
            caterpillar: caterpillar.map(CaterpillarSpec::to_string),
            leg_rule_holds,
            report: &report,
            extrema: &extrema,
        }),
        Format::Csv => render::component_csv(&report),
        other => return Err(unsupported(other, "check")),
    };
    emit(output, &text)?;
    let holds = if property.strict {
        extrema.strict
    } else if property.relaxed {
        extrema.relaxed
    } else {
        report.admissible && leg_rule_holds.unwrap_or(true)
    };
    Ok(if holds {
        Verdict::Ok
    } else {
        Verdict::PropertyFailed
    })
}

fn cmd_gen(family: &[String], output: &OutputArgs) -> CliResult {
    let g = parse_family(family)?.build()?;
    let text = match output.format.unwrap_or(Format::Edges) {
        Format::Edges => g.to_edge_list(),
        Format::Graph6 => format!("{}\n", graph6::encode(&g)),
        Format::Dot => render::dot(&g, None),
        Format::Json => json_line(&render::EdgeListJson::new(&g)),
        Format::Csv => render::edge_csv(&g),
    };
    emit(output, &text)?;
    Ok(Verdict::Ok)
}

fn cmd_enumerate(n: usize, count: bool, output: &OutputArgs) -> CliResult {
    let trees = FreeTrees::new(n)?;
    let text = if count {
        format!("{}\n", free_tree_count(n))
    } else {
        let mut text = String::new();
        match output.format.unwrap_or(Format::Csv) {
            Format::Csv => {
                text.push_str("code\n");
                for seq in trees {
                    text.push_str(&seq.code());
                    text.push('\n');
                }
            }
            Format::Graph6 => {
                for seq in trees {
                    text.push_str(&graph6::encode(&seq.to_graph()));
                    text.push('\n');
                }
            }
            Format::Json => {
                let codes: Vec<String> = trees.map(|s| s.code()).collect();
                text = json_line(&codes);
            }
            other => return Err(unsupported(other, "enumerate")),
        }
        text
    };
    emit(output, &text)?;
    Ok(Verdict::Ok)
}

fn cmd_survey(n: usize, config: SurveyConfig) -> CliResult {
    let aggregate = run_survey(n, &config)?;
    let mut out = io::stdout().lock();
    out.write_all(json_line(&aggregate).as_bytes())?;
    Ok(if aggregate.census_matches {
        Verdict::Ok
    } else {
        Verdict::PropertyFailed
    })
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Analyze {
            input,
            output,
            k,
            property,
        } => cmd_analyze(input, output, *k, property),
        Command::Game {
            input,
            output,
            from,
            to,
            k,
            samples,
            seed,
            max_steps,
        } => cmd_game(input, output, *from, *to, *k, *samples, *seed, *max_steps),
        Command::Hit {
            input,
            output,
            target,
            from,
        } => cmd_hit(input, output, target, *from),
        Command::Check {
            input,
            output,
            caterpillar,
            property,
        } => cmd_check(input, output, caterpillar.as_ref(), property),
        Command::Gen { family, output } => cmd_gen(family, output),
        Command::Enumerate { n, count, output } => cmd_enumerate(*n, *count, output),
        Command::Survey {
            n,
            output,
            resume,
            include_degenerate,
            graph6,
            checkpoint_every,
        } => cmd_survey(
            *n,
            SurveyConfig {
                parallelism: cli.parallelism.unwrap_or_else(default_parallelism),
                include_degenerate: *include_degenerate,
                checkpoint_every: *checkpoint_every,
                output: output.clone(),
                graph6: *graph6,
                resume: *resume,
            },
        ),
    }
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.parallelism {
        if threads == 0 {
            eprintln!("fiedler: --parallelism must be at least 1");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::PropertyFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("fiedler: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("fiedler: {e}");
            ExitCode::from(2)
        }
    }
}
