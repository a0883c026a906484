mod input;
mod report;

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use thiserror::Error;

use principal_ratio::irregularity::report_from;
use principal_ratio::search::{
    find_extremal, kite_optimize, perturb_analysis, perturb_deletion, SearchOptions, SearchResult, Source,
    MAX_SCAN_ORDER, MIN_SCAN_ORDER,
};
use principal_ratio::spectral::principal_eigenpair;
use principal_ratio::verify::{self, Suite, VerifyOptions};
use principal_ratio::{graph6, Graph};

use report::{emit, Format, Record};

const GRAPH_HELP: &str = "\
GRAPH arguments are resolved in this order:
  family spec    kite:r,s  pineapple:c,p  path:n  complete:n  cycle:n  star:m
  file           edge list (header `n <count>`, then `u v` per line, 0-indexed)
                 or a single graph6 line
  graph6 string  e.g. C~ for K4

Exit status: 0 success, 1 a check failed, 2 usage or input error.";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            _ => 2,
        }
    }
}

impl From<principal_ratio::Error> for CliError {
    fn from(e: principal_ratio::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if tol > 0.0 && tol <= 1e-3 {
        Ok(tol)
    } else {
        Err("tolerance must lie in (0, 1e-3]".into())
    }
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(t) if t >= 1 => Ok(t),
        _ => Err("thread count must be an integer >= 1".into()),
    }
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().ok();
    match s.split_once(',') {
        Some((a, b)) => parse(a).zip(parse(b)).ok_or_else(|| format!("{s:?}: expected u,v")),
        None => Err(format!("{s:?}: expected u,v")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "pratio", version, about = "Principal ratio of graphs and kite extremal search", after_help = GRAPH_HELP)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Eigenpair residual tolerance, in (0, 1e-3].
    #[arg(long, global = true, default_value = "1e-12", value_parser = parse_tol)]
    tol: f64,
    /// Worker threads; all available cores when omitted.
    #[arg(long, global = true, value_parser = parse_threads)]
    threads: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenpair, principal ratio and irregularity measures of one graph.
    #[command(group(ArgGroup::new("graph").required(true).args(["input", "graph_arg"])))]
    Ratio {
        #[arg(long)]
        input: Option<String>,
        #[arg(value_name = "GRAPH")]
        graph_arg: Option<String>,
    },
    /// Connected graph with the largest principal ratio.
    #[command(group(ArgGroup::new("source").required(true).args(["n", "input"])))]
    Search {
        /// Scan every labeled graph on n vertices (3..=8).
        #[arg(long)]
        n: Option<usize>,
        /// Read candidates from a graph6 file instead.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Evaluate every graph, skipping none by the upper bound.
        #[arg(long)]
        no_prune: bool,
    },
    /// Best path/clique split for each order.
    Kiteopt {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Also write every split to this file.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Run an invariant suite: lemma1, lemma2, lemma7, sigma-series or all.
    Verify {
        #[arg(value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
        suite: Suite,
        /// Largest order for the exhaustive lemma1 sweep.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(3..=7))]
        max_order: u64,
    },
    /// Add or remove one edge and measure the change.
    #[command(group(ArgGroup::new("graph").required(true).args(["input", "graph_arg"])))]
    Perturb {
        #[arg(long)]
        input: Option<String>,
        #[arg(value_name = "GRAPH")]
        graph_arg: Option<String>,
        /// Edge as u,v.
        #[arg(long, value_parser = parse_edge)]
        edge: (usize, usize),
        /// Vertex whose entry is tracked; defaults to the one before the
        /// maximum on the min-to-max path.
        #[arg(long)]
        tracked: Option<usize>,
        /// Remove the edge instead of adding it.
        #[arg(long)]
        remove: bool,
        /// Order used in the conditions; defaults to the graph's.
        #[arg(long)]
        n: Option<usize>,
    },
}

struct Ctx {
    format: Format,
    tol: f64,
    threads: Option<usize>,
    seed: u64,
}

impl Ctx {
    fn emit(&self, records: &[Record]) -> Result<(), CliError> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        emit(&mut out, self.format, records)?;
        out.flush()?;
        Ok(())
    }
}

fn cmd_ratio(ctx: &Ctx, arg: &str) -> Result<(), CliError> {
    let g = input::load(arg)?;
    let spec = principal_eigenpair(&g, ctx.tol)?;
    let irr = report_from(&g, &spec);
    let mut r = Record::default();
    r.push("input", arg)
        .push("graph6", graph6::encode(&g))
        .push("n", g.n())
        .push("m", g.edge_count())
        .push("lambda1", spec.lambda1)
        .push("gamma", irr.gamma)
        .push("log_gamma", spec.log_gamma())
        .push("epsilon", irr.epsilon)
        .push("variance", irr.variance)
        .push("albertson", irr.albertson)
        .push("s_measure", irr.s_measure)
        .push("residual", spec.residual)
        .push("min_vertex", spec.min_vertex)
        .push("max_vertex", spec.max_vertex)
        .push("iterations", spec.iterations);
    ctx.emit(&[r])
}

fn search_record(source: &str, res: &SearchResult, seconds: f64) -> Record {
    let a = &res.audit;
    let mut r = Record::default();
    r.push("source", source)
        .push("n", res.n)
        .push("witness", res.best_graph6.as_str())
        .push("log_gamma", res.log_gamma)
        .push("lambda1", res.spectral.lambda1)
        .push("residual", res.spectral.residual)
        .push("kite", res.kite.map_or_else(|| "not a kite".to_string(), |p| p.to_string()))
        .push("kite_r", res.kite.map(|p| p.r))
        .push("kite_s", res.kite.map(|p| p.s))
        .push("k", a.k)
        .push("c_size", a.c_size)
        .push("lambda_gt_nk", a.lambda_gt_nk)
        .push("pendant_prefix_len", a.pendant_prefix_len)
        .push("xk_dominates", a.xk_dominates)
        .push("deg_xk2", a.deg_xk2)
        .push("deg_xk1", a.deg_xk1)
        .push("nbhd_sum_ok", a.nbhd_sum_ok)
        .push("nbhd_subsets_checked", a.nbhd_subsets_checked)
        .push("nbhd_min_margin", a.nbhd_min_margin)
        .push("lemma9_bound", a.lemma9_bound)
        .push("lemma9_holds", a.lemma9_holds)
        .push("vacuous", a.vacuous)
        .push("graphs_scanned", res.graphs_scanned)
        .push("evaluated", res.evaluated)
        .push("pruned", res.pruned)
        .push("contenders", res.contenders.len())
        .push("tie_flagged", res.tie_flagged)
        .push("diagnostics", res.diagnostics.len())
        .push("wall_time_s", seconds);
    r
}

fn cmd_search(ctx: &Ctx, n: Option<usize>, input: Option<PathBuf>, no_prune: bool) -> Result<(), CliError> {
    let opts = SearchOptions {
        tol: ctx.tol,
        threads: ctx.threads,
        prune: !no_prune,
        seed: ctx.seed,
    };
    let start = Instant::now();
    let (label, res, exhaustive) = match (n, input) {
        (Some(n), _) => {
            if !(MIN_SCAN_ORDER..=MAX_SCAN_ORDER).contains(&n) {
                return Err(CliError::Usage(format!(
                    "--n must lie in {MIN_SCAN_ORDER}..={MAX_SCAN_ORDER}; use --input for larger orders"
                )));
            }
            let res = find_extremal::<io::Empty>(Source::Labeled(n), &opts)?;
            (format!("labeled:{n}"), res, true)
        }
        (None, Some(path)) => {
            let file = File::open(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let res = find_extremal(Source::Graph6(BufReader::new(file)), &opts)?;
            (path.display().to_string(), res, false)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let seconds = start.elapsed().as_secs_f64();
    for d in &res.diagnostics {
        eprintln!("warning: line {}: {}", d.line, d.message);
    }
    ctx.emit(&[search_record(&label, &res, seconds)])?;
    // on a complete scan the witness is the true maximiser, so λ₁ > n - k must hold
    if exhaustive && res.audit.k >= 2 && !res.audit.lambda_gt_nk {
        return Err(CliError::Check(format!(
            "witness violates lambda1 > n - k (k = {})",
            res.audit.k
        )));
    }
    Ok(())
}

fn cmd_kiteopt(ctx: &Ctx, orders: &[usize], table: Option<PathBuf>) -> Result<(), CliError> {
    let mut rows = Vec::new();
    let mut dump = Vec::new();
    for &n in orders {
        if n < 5 {
            return Err(CliError::Usage(format!("kiteopt needs n >= 5, got {n}")));
        }
        let opt = kite_optimize(n, ctx.tol)?;
        let mut r = Record::default();
        r.push("n", n)
            .push("r", opt.best.r)
            .push("s", opt.best.s)
            .push("log_gamma", opt.log_gamma)
            .push("n_over_ln_n", n as f64 / (n as f64).ln())
            .push("ratio", opt.ratio);
        rows.push(r);
        for row in &opt.table {
            let mut t = Record::default();
            t.push("n", n)
                .push("s", row.s)
                .push("r", row.r)
                .push("lambda1", row.lambda1)
                .push("log_gamma", row.log_gamma);
            dump.push(t);
        }
    }
    if let Some(path) = table {
        let mut file = File::create(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        emit(&mut file, ctx.format, &dump)?;
    }
    ctx.emit(&rows)
}

fn cmd_verify(ctx: &Ctx, suite: Suite, max_order: usize) -> Result<(), CliError> {
    let opts = VerifyOptions {
        tol: ctx.tol,
        threads: ctx.threads,
        seed: ctx.seed,
        max_order,
    };
    let outcomes = verify::run(suite, &opts)?;
    let records: Vec<Record> = outcomes
        .iter()
        .map(|o| {
            let mut r = Record::default();
            r.push("suite", o.suite.as_str())
                .push("check", o.check.as_str())
                .push("status", if o.passed { "pass" } else { "fail" })
                .push("cases", o.cases)
                .push("worst_margin", o.worst_margin)
                .push("detail", o.detail.as_str());
            r
        })
        .collect();
    ctx.emit(&records)?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::Check(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn default_tracked(g: &Graph, tol: f64) -> Result<usize, CliError> {
    let spec = principal_eigenpair(g, tol)?;
    let path = g
        .shortest_path(spec.min_vertex, spec.max_vertex)
        .ok_or(principal_ratio::Error::Disconnected(spec.min_vertex, spec.max_vertex))?;
    Ok(path[path.len().saturating_sub(2)])
}

fn cmd_perturb(
    ctx: &Ctx,
    arg: &str,
    edge: (usize, usize),
    tracked: Option<usize>,
    remove: bool,
    n: Option<usize>,
) -> Result<(), CliError> {
    let g = input::load(arg)?;
    let tracked = match tracked {
        Some(t) => t,
        None => default_tracked(&g, ctx.tol)?,
    };
    let n = n.unwrap_or(g.n());
    let rep = if remove {
        perturb_deletion(&g, edge, tracked, n, ctx.tol)?
    } else {
        perturb_analysis(&g, edge, tracked, n, ctx.tol)?
    };
    let mut r = Record::default();
    r.push("input", arg)
        .push("edge", format!("{},{}", rep.edge.0, rep.edge.1))
        .push("removed", rep.removed)
        .push("tracked", rep.tracked)
        .push("n_for_condition", rep.n_for_condition)
        .push("lambda_before", rep.lambda_before)
        .push("lambda_after", rep.lambda_after)
        .push("delta1", rep.delta1)
        .push("delta2", rep.delta2)
        .push("log_gamma_before", rep.log_gamma_before)
        .push("log_gamma_after", rep.log_gamma_after)
        .push("increase_condition", rep.increase_condition)
        .push("decrease_condition", rep.decrease_condition)
        .push("observed_increase", rep.observed_increase)
        .push("max_vertex_moved", rep.max_vertex_moved);
    ctx.emit(&[r])
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx {
        format: cli.format,
        tol: cli.tol,
        threads: cli.threads,
        seed: cli.seed,
    };
    match cli.command {
        Command::Ratio { input, graph_arg } => cmd_ratio(&ctx, &input.or(graph_arg).expect("clap group")),
        Command::Search { n, input, no_prune } => cmd_search(&ctx, n, input, no_prune),
        Command::Kiteopt { n, table } => cmd_kiteopt(&ctx, &n, table),
        Command::Verify { suite, max_order } => cmd_verify(&ctx, suite, max_order as usize),
        Command::Perturb {
            input,
            graph_arg,
            edge,
            tracked,
            remove,
            n,
        } => cmd_perturb(&ctx, &input.or(graph_arg).expect("clap group"), edge, tracked, remove, n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
