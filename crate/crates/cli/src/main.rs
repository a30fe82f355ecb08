//! `robusta`: command-line front end for robust graph parameters.
//!
//! Output is JSON (pretty-printed, deterministic for a fixed command line);
//! `--table` prints a short text view of the same report instead.
//! Exit codes: 0 success, 2 a checked bound or claim failed, 3 input or cap
//! error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use robusta_core::exact::{Caps, ParamRequest};
use robusta_core::graph::generators::GenSpec;
use robusta_core::graph::io::{parse_graph, Format};
use robusta_core::{Error, Graph};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "robusta", version, about = "Robust graph parameters: exact values, bounds and experiments")]
struct Cli {
    /// TOML file overriding solver size caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print a text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Include wall-clock times (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Source {
    /// Generator, e.g. `complete:7` or `erdos-renyi:8,0.4`.
    #[arg(long, conflicts_with = "input")]
    gen: Option<String>,
    /// Graph file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input format: dimacs or edgelist (default from the file extension).
    #[arg(long)]
    format: Option<String>,
    /// Seed for randomized generators.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Oracle,
    Exact,
    Dp,
    PolyBounds,
}

#[derive(Subcommand)]
enum Command {
    /// Compute classical and robust parameters with certificates.
    Compute {
        #[command(flatten)]
        source: Source,
        /// Comma-separated names: chi, omega, alpha, theta, chiprime,
        /// arboricity, degeneracy, chi1, omega1, alpha1, theta1, chi1prime,
        /// iota.
        #[arg(long, value_delimiter = ',', required = true)]
        param: Vec<String>,
        /// Selection budget for robust parameters.
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Engine::Exact)]
        engine: Engine,
    },
    /// Print a generated graph.
    Generate {
        #[command(flatten)]
        source: Source,
        /// edgelist, dimacs, dot or json.
        #[arg(long = "to", default_value = "edgelist")]
        to: String,
    },
    /// Split the edges into the fewest quasi-unicyclic classes.
    Decompose {
        #[command(flatten)]
        source: Source,
    },
    /// Evaluate inequality suites on a graph or a seeded corpus.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Number of random graphs instead of a single graph.
        #[arg(long)]
        corpus: Option<usize>,
        /// Largest order in the corpus.
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Check the union bounds on the Hamiltonian cycles of K_{2k+1}.
        #[arg(long)]
        walecki: Option<usize>,
        /// Suites: generalized, sandwich, operations, degree, degeneracy,
        /// edge-index, union (default all).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Budgets to check.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        s: Vec<usize>,
        /// Report chi1 as n + 1 to check that violations are caught.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Build the blow-up gadget and check its chromatic equalities.
    HardnessDemo {
        #[command(flatten)]
        source: Source,
    },
    /// Search all small graphs for theta1 = theta.
    Explore {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        no_filters: bool,
    },
    /// Frequency of chi1 = r on random complete-multipartite samples.
    RandomExperiment {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Everything a command produces.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub input: Value,
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<robusta_core::bounds::BoundCheck>,
    /// Set when a bound or claim failed; maps to exit code 2.
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str, input: Value) -> Self {
        RunReport {
            command: command.to_string(),
            input,
            results: Vec::new(),
            bounds: Vec::new(),
            violation: false,
            wall_time_ms: None,
        }
    }
}

pub enum Outcome {
    Report(RunReport),
    /// Raw text for `generate`.
    Text(String),
}

pub struct Ctx {
    pub caps: Caps,
    pub timing: bool,
}

impl Source {
    pub fn load(&self) -> Result<(Graph, Value), Error> {
        match (&self.gen, &self.input) {
            (Some(spec), None) => {
                let parsed: GenSpec = spec.parse()?;
                let g = parsed.build(self.seed)?;
                let seed = if parsed.is_random() { self.seed } else { None };
                Ok((g, json!({"generator": spec, "seed": seed})))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                let format = match &self.format {
                    Some(f) => f.parse()?,
                    None if path.extension().is_some_and(|e| e == "col") => Format::DimacsCol,
                    None => Format::EdgeList,
                };
                let parsed = parse_graph(&text, format)?;
                Ok((parsed.graph, json!({"file": path, "format": format, "labels": parsed.labels})))
            }
            _ => Err(Error::InvalidArgument("give exactly one of --gen or --input".into())),
        }
    }
}

fn load_caps(path: Option<&PathBuf>) -> Result<Caps, Error> {
    let Some(path) = path else {
        return Ok(Caps::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let caps: Caps = toml::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    if caps != Caps::default() {
        eprintln!(
            "warning: solver caps overridden by {}; runs above the defaults may take very long",
            path.display()
        );
    }
    Ok(caps)
}

fn parse_params(names: &[String]) -> Result<Vec<ParamRequest>, Error> {
    names.iter().map(|n| n.parse()).collect()
}

fn error_code(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::DuplicateEdge { .. } | Error::Loop { .. } => "parse",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::InvalidSelection(_) | Error::NotRemovable { .. } => "invalid-selection",
        Error::InvalidDecomposition(_) => "invalid-decomposition",
        Error::Certificate(_) => "certificate",
    }
}

fn fail(e: &Error) -> ExitCode {
    let body = json!({"error": error_code(e), "message": e.to_string()});
    eprintln!("{}", serde_json::to_string_pretty(&body).unwrap());
    ExitCode::from(3)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let ctx = Ctx {
        caps: load_caps(cli.config.as_ref())?,
        timing: cli.timing,
    };
    let start = std::time::Instant::now();
    let mut out = match &cli.command {
        Command::Compute {
            source,
            param,
            s,
            engine,
        } => commands::compute(&ctx, source, &parse_params(param)?, *s, *engine)?,
        Command::Generate { source, to } => return commands::generate(source, to).map(Outcome::Text),
        Command::Decompose { source } => commands::decompose(source)?,
        Command::Verify {
            source,
            corpus,
            n_max,
            walecki,
            suite,
            s,
            inject_fault,
        } => {
            let suites = if suite.is_empty() {
                robusta_core::bounds::Suite::ALL.to_vec()
            } else {
                suite.iter().map(|x| x.parse()).collect::<Result<_, _>>()?
            };
            let mode = match (corpus, walecki) {
                (Some(count), None) => commands::VerifyMode::Corpus {
                    count: *count,
                    n_max: *n_max,
                    seed: source
                        .seed
                        .ok_or_else(|| Error::InvalidArgument("--corpus needs --seed".into()))?,
                },
                (None, Some(k)) => commands::VerifyMode::Walecki(*k),
                (None, None) => commands::VerifyMode::Single(source.clone()),
                _ => return Err(Error::InvalidArgument("--corpus and --walecki exclude each other".into())),
            };
            commands::verify(&ctx, mode, &suites, s, *inject_fault)?
        }
        Command::HardnessDemo { source } => commands::hardness_demo(&ctx, source)?,
        Command::Explore { n_max, no_filters } => commands::explore(&ctx, *n_max, !no_filters)?,
        Command::RandomExperiment { m, r, p, trials, seed } => {
            commands::random_experiment(&ctx, *m, *r, *p, *trials, *seed)?
        }
    };
    if cli.timing {
        out.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(Outcome::Report(out))
}

fn table(r: &RunReport) -> String {
    let mut s = format!("command: {}\n", r.command);
    for v in &r.results {
        match (v.get("parameter"), v.get("value")) {
            (Some(p), Some(x)) => {
                let budget = v.get("s").map(|b| format!(" (s={b})")).unwrap_or_default();
                s += &format!("{}{budget}: {x}\n", p.as_str().unwrap_or("?"));
            }
            _ => s += &format!("{v}\n"),
        }
    }
    for b in &r.bounds {
        let rel = match b.relation {
            robusta_core::bounds::Relation::Le => "<=",
            robusta_core::bounds::Relation::Eq => "==",
        };
        let mark = if b.pass { "ok  " } else { "FAIL" };
        s += &format!("{mark} [{}] {}: {} {rel} {}\n", b.suite, b.name, b.lhs, b.rhs);
    }
    if r.violation {
        s += "violation\n";
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let (text, violation) = match &outcome {
        Outcome::Text(t) => (t.clone(), false),
        Outcome::Report(r) if cli.table => (table(r), r.violation),
        Outcome::Report(r) => (serde_json::to_string_pretty(r).unwrap() + "\n", r.violation),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return fail(&Error::InvalidArgument(format!("{}: {e}", path.display())));
            }
        }
        None => print!("{text}"),
    }
    if violation {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
