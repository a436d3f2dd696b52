//! `satgame`: solve, play, simulate and check saturation games from the shell.
//!
//! Exit codes: 0 success, 1 failure (including a failed `verify` row),
//! 2 bad usage, 3 search budget exhausted.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use satgame::analysis::{
    c4_bound_constant, closed_form, essential_path_report, match_bound_report, parse_rational, C4BoundParams,
    ClosedForm, THEOREM_IDS,
};
use satgame::canonical::certificate;
use satgame::families::ForbiddenFamily;
use satgame::graph::{Edge, GameGraph, GraphDocument, HostGraph, Vertex};
use satgame::policies::{designated_stars, Policy};
use satgame::simulate::{experiment_csv, play, random_process, scaling_experiment};
use satgame::solver::{game_value, PlayerRole, SolveConfig, SolveError};
use satgame::verify::run_suite;

#[derive(Parser)]
#[command(name = "satgame", version, about = "Saturation games on K_n and K_{m,n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact game value from the empty position.
    Solve(SolveArgs),
    /// One game between two policies.
    Play(PlayArgs),
    /// The random F-free process.
    Process(ProcessArgs),
    /// Repeated policy games over a range of hosts, summarized as CSV.
    Experiment(ExperimentArgs),
    #[command(subcommand)]
    Analyze(Analyze),
    /// Runs the acceptance table.
    Verify(VerifyArgs),
    /// Structure of a position read from a file.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    host: HostGraph,
    #[arg(long)]
    first: PlayerRole,
    /// Give up after expanding this many positions.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct PlayArgs {
    #[arg(long = "max")]
    max_policy: String,
    #[arg(long = "min")]
    min_policy: String,
    #[arg(long)]
    family: String,
    #[arg(long)]
    host: HostGraph,
    #[arg(long)]
    first: PlayerRole,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct ProcessArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    host: HostGraph,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    family: String,
    /// Host template and sizes, e.g. `B:n,n@50,100,200` or `K:n@10,20`.
    #[arg(long)]
    hosts: String,
    #[arg(long = "max")]
    max_policy: String,
    #[arg(long = "min")]
    min_policy: String,
    #[arg(long, default_value = "max")]
    first: PlayerRole,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Analyze {
    /// Matching bound `e(G) >= m + n - α'(G)` for a P4-saturated graph.
    Match(GraphArgs),
    /// Essential-path statistics for a vertex set S.
    Essential {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated vertices of S; defaults to the designated stars.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<Vertex>>,
    },
    /// The constant in the C4 lower bound.
    C4const {
        #[arg(long)]
        c: String,
        #[arg(long, conflicts_with = "d_squared")]
        d: Option<String>,
        #[arg(long = "d-squared")]
        d_squared: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// A closed-form game value.
    Formula {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        first: Option<PlayerRole>,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    host: HostGraph,
    /// JSON list of `[u, v]` pairs, a graph document, or one `u v` per line.
    #[arg(long)]
    edges: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "paper")]
    suite: String,
    /// Only rows whose name contains this, or whose number equals it.
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Families to test; defaults to every family the toolkit knows.
    #[arg(long)]
    family: Vec<String>,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: Result<T, impl std::fmt::Display>) -> anyhow::Result<T> {
    r.map_err(|e| Usage(format!("{e:#}")).into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else if matches!(e.downcast_ref::<SolveError>(), Some(SolveError::NodeBudgetExceeded { .. })) {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn print_json(v: &impl serde::Serialize) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cmd: Command) -> anyhow::Result<u8> {
    match cmd {
        Command::Solve(a) => {
            let f = usage(ForbiddenFamily::parse(&a.family, a.host))?;
            let mut cfg = SolveConfig::new(f, a.host, a.first);
            cfg.node_budget = a.budget;
            cfg.parallel = a.parallel;
            let r = game_value(&cfg)?;
            print_json(&r.report(&cfg))?;
        }
        Command::Play(a) => {
            let f = usage(ForbiddenFamily::parse(&a.family, a.host))?;
            // A bare `random` draws from the game seed; Min's from its complement.
            let pmax = usage(Policy::parse(&a.max_policy, Some(a.seed)))?;
            let pmin = usage(Policy::parse(&a.min_policy, Some(!a.seed)))?;
            usage(pmax.check_compatible(f, a.host))?;
            usage(pmin.check_compatible(f, a.host))?;
            print_json(&play(&pmax, &pmin, f, a.host, a.first, Some(a.seed))?)?;
        }
        Command::Process(a) => {
            let f = usage(ForbiddenFamily::parse(&a.family, a.host))?;
            print_json(&random_process(f, a.host, a.seed)?)?;
        }
        Command::Experiment(a) => {
            let hosts = usage(expand_hosts(&a.hosts))?;
            for &h in &hosts {
                let f = usage(ForbiddenFamily::parse(&a.family, h))?;
                let pmax = usage(Policy::parse(&a.max_policy, Some(a.seed)))?;
                let pmin = usage(Policy::parse(&a.min_policy, Some(!a.seed)))?;
                usage(pmax.check_compatible(f, h))?;
                usage(pmin.check_compatible(f, h))?;
            }
            if a.trials == 0 {
                bail!(Usage("--trials must be at least 1".into()));
            }
            let pmax = usage(Policy::parse(&a.max_policy, Some(a.seed)))?;
            let pmin = usage(Policy::parse(&a.min_policy, Some(!a.seed)))?;
            let rows = scaling_experiment(&a.family, &hosts, &pmax, &pmin, a.first, a.trials, a.seed)?;
            let csv = experiment_csv(&rows);
            match a.out {
                Some(path) => fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
        }
        Command::Analyze(op) => analyze(op)?,
        Command::Verify(a) => {
            if a.suite != "paper" {
                bail!(Usage(format!("unknown suite {:?}; the only suite is \"paper\"", a.suite)));
            }
            let results = run_suite(a.filter.as_deref());
            if results.is_empty() {
                bail!(Usage(format!("no criterion matches {:?}", a.filter.unwrap_or_default())));
            }
            let mut out = std::io::stdout().lock();
            for r in &results {
                writeln!(out, "{r}")?;
            }
            if results.iter().any(|r| !r.passed) {
                return Ok(1);
            }
        }
        Command::Inspect(a) => {
            let g = read_graph(&a.graph)?;
            let families: Vec<String> = if a.family.is_empty() {
                ["odd-cycles", "trees", "star:r+1=3", "path:4", "cycle:4"]
                    .map(String::from)
                    .to_vec()
            } else {
                a.family
            };
            let mut status = Vec::new();
            for name in &families {
                let f = usage(ForbiddenFamily::parse(name, g.host()))?;
                let free = f.is_free(&g)?;
                status.push(json!({
                    "family": f.to_string(),
                    "free": free,
                    "saturated": free && f.is_saturated(&g)?,
                }));
            }
            print_json(&json!({
                "host": g.host().to_string(),
                "edges": g.edge_count(),
                "components": g.components(),
                "certificate": certificate(&g).to_hex(),
                "families": status,
            }))?;
        }
    }
    Ok(0)
}

fn analyze(op: Analyze) -> anyhow::Result<()> {
    match op {
        Analyze::Match(a) => {
            let g = read_graph(&a)?;
            print_json(&usage(match_bound_report(&g))?)
        }
        Analyze::Essential { graph, s } => {
            let g = read_graph(&graph)?;
            let s = s.unwrap_or_else(|| {
                designated_stars(&g)
                    .into_iter()
                    .flat_map(|(c, leaves)| std::iter::once(c).chain(leaves))
                    .collect()
            });
            print_json(&usage(essential_path_report(&g, &s))?)
        }
        Analyze::C4const { c, d, d_squared, n } => {
            let num = |t: &str| parse_rational(t).ok_or_else(|| Usage(format!("not a rational number: {t:?}")));
            let c = num(&c)?;
            let params = match (d, d_squared) {
                (Some(d), None) => C4BoundParams::with_d(c, num(&d)?),
                (None, Some(d2)) => C4BoundParams::new(c, num(&d2)?),
                _ => bail!(Usage("give exactly one of --d and --d-squared".into())),
            };
            print_json(&c4_bound_constant(&usage(params)?, n))
        }
        Analyze::Formula {
            theorem,
            n,
            m,
            k,
            r,
            first,
        } => {
            if !THEOREM_IDS.contains(&theorem.as_str()) {
                bail!(Usage(format!(
                    "unknown theorem {theorem:?}; expected one of {}",
                    THEOREM_IDS.join(", ")
                )));
            }
            let cf = usage(ClosedForm::from_parts(&theorem, n, m, k, r, first))?;
            let v = usage(closed_form(cf))?;
            println!("{}", v.value);
            if v.conjectured {
                eprintln!("note: conjectured value");
            }
            Ok(())
        }
    }
}

/// Expands `T@a,b,c` by substituting each size for the `n` parameters of `T`.
fn expand_hosts(spec: &str) -> anyhow::Result<Vec<HostGraph>> {
    let (template, sizes) = spec
        .split_once('@')
        .ok_or_else(|| anyhow!("expected TEMPLATE@SIZES, e.g. B:n,n@50,100"))?;
    let (kind, params) = template
        .split_once(':')
        .ok_or_else(|| anyhow!("host template {template:?} needs K: or B:"))?;
    sizes
        .split(',')
        .map(|size| {
            let size = size.trim();
            size.parse::<usize>().with_context(|| format!("bad size {size:?}"))?;
            let params: Vec<&str> = params
                .split(',')
                .map(|p| if p.trim() == "n" { size } else { p.trim() })
                .collect();
            Ok(format!("{kind}:{}", params.join(",")).parse::<HostGraph>()?)
        })
        .collect()
}

fn read_graph(a: &GraphArgs) -> anyhow::Result<GameGraph> {
    let text = fs::read_to_string(&a.edges).with_context(|| format!("reading {}", a.edges.display()))?;
    let edges: Vec<Edge> = if let Ok(doc) = serde_json::from_str::<GraphDocument>(&text) {
        if doc.host != a.host {
            bail!(Usage(format!("file is for host {}, not {}", doc.host, a.host)));
        }
        doc.edges
    } else if let Ok(edges) = serde_json::from_str::<Vec<Edge>>(&text) {
        edges
    } else {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ends: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',' || c == '-').filter(|t| !t.is_empty()).collect();
            let [u, v] = ends.as_slice() else {
                bail!(Usage(format!("line {}: expected two vertices, got {line:?}", i + 1)));
            };
            let parse = |t: &str| t.parse::<Vertex>().map_err(|_| Usage(format!("line {}: bad vertex {t:?}", i + 1)));
            edges.push(usage(Edge::new(parse(u)?, parse(v)?))?);
        }
        edges
    };
    usage(GameGraph::from_edges(a.host, edges.into_iter().map(|e| e.endpoints())))
}
