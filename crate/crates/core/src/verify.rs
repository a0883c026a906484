//! Invariant suites behind `pratio verify`. Each check reports how many cases
//! it covered and the worst margin seen; a negative margin is a failure.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closed_form::{kite_lambda_bounds, pendant_path_gamma, sigma_of_lambda, sigma_series};
use crate::error::{Error, Result};
use crate::graph::{Graph, KiteParams, MAX_VERTICES};
use crate::search::{scan_labeled, structure_check, GraphFold, LEMMA7_EXHAUSTIVE_LIMIT};
use crate::spectral::principal_eigenpair;

/// Absolute slack of the path bound.
pub const PATH_BOUND_SLACK: f64 = 1e-8;
/// Required distance from the kite interval endpoints.
pub const KITE_INTERVAL_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma7,
    SigmaSeries,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["lemma1", "lemma2", "lemma7", "sigma-series", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lemma1" => Suite::Lemma1,
            "lemma2" => Suite::Lemma2,
            "lemma7" => Suite::Lemma7,
            "sigma-series" => Suite::SigmaSeries,
            "all" => Suite::All,
            _ => {
                return Err(Error::OutOfRange(format!(
                    "unknown suite {s:?} (expected one of {})",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub check: String,
    pub passed: bool,
    pub cases: u64,
    /// Smallest slack observed; negative means violated.
    pub worst_margin: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub threads: Option<usize>,
    pub seed: u64,
    /// Largest order of the exhaustive path-bound sweep.
    pub max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: crate::spectral::DEFAULT_TOLERANCE,
            threads: None,
            seed: 0,
            max_order: 6,
        }
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    match suite {
        Suite::Lemma1 => path_bound(opts),
        Suite::Lemma2 => kite_interval(opts).map(|c| vec![c]),
        Suite::Lemma7 => neighbourhood_sums(opts).map(|c| vec![c]),
        Suite::SigmaSeries => Ok(series_accuracy()),
        Suite::All => {
            let mut out = path_bound(opts)?;
            out.push(kite_interval(opts)?);
            out.push(neighbourhood_sums(opts)?);
            out.extend(series_accuracy());
            Ok(out)
        }
    }
}

/// Path-bound sweep over one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathBoundStats {
    pub graphs: u64,
    /// Graphs with `λ₁ < 2`. `σ` is not real there, so `f(σ, j)` is taken in
    /// its polynomial form `u_{j-1}(λ₁)`.
    pub below_two: u64,
    pub prefixes: u64,
    /// Smallest `f(σ, j) / x_j - γ` over every prefix.
    pub worst_margin: f64,
    pub pendant_prefixes: u64,
    /// Largest `|f(σ, j) / x_j - γ| / γ` over pendant prefixes.
    pub worst_equality_gap: f64,
    pub failures: u64,
}

impl Default for PathBoundStats {
    fn default() -> Self {
        PathBoundStats {
            graphs: 0,
            below_two: 0,
            prefixes: 0,
            worst_margin: f64::INFINITY,
            pendant_prefixes: 0,
            worst_equality_gap: 0.0,
            failures: 0,
        }
    }
}

impl PathBoundStats {
    fn merge(self, o: Self) -> Self {
        PathBoundStats {
            graphs: self.graphs + o.graphs,
            below_two: self.below_two + o.below_two,
            prefixes: self.prefixes + o.prefixes,
            worst_margin: self.worst_margin.min(o.worst_margin),
            pendant_prefixes: self.pendant_prefixes + o.pendant_prefixes,
            worst_equality_gap: self.worst_equality_gap.max(o.worst_equality_gap),
            failures: self.failures + o.failures,
        }
    }
}

/// `f(σ, j) = u_{j-1}(λ)`; by recurrence below 2, in log space above.
fn path_factor(j: usize, lambda: f64) -> Result<f64> {
    if lambda >= 2.0 {
        return Ok(pendant_path_gamma(j, lambda)?.exp());
    }
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    for _ in 1..j {
        let next = lambda.mul_add(cur, -prev);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Check `γ ≤ f(σ, j) / x_j` for every prefix `x_1, ..., x_j` of the shortest
/// path from the min-entry vertex to the max-entry vertex, and equality on
/// the pendant prefixes.
pub fn path_bound_stats(g: &Graph, tol: f64) -> Result<PathBoundStats> {
    let spec = principal_eigenpair(g, tol)?;
    let path = g
        .shortest_path(spec.min_vertex, spec.max_vertex)
        .ok_or(Error::Disconnected(spec.min_vertex, spec.max_vertex))?;
    let pendant = pendant_prefix_len(g, &path);
    let mut stats = PathBoundStats {
        graphs: 1,
        below_two: (spec.lambda1 < 2.0) as u64,
        ..Default::default()
    };
    for j in 1..=path.len() {
        let bound = path_factor(j, spec.lambda1)? / spec.v[path[j - 1]];
        let margin = bound - spec.gamma;
        stats.prefixes += 1;
        stats.worst_margin = stats.worst_margin.min(margin);
        if j <= pendant {
            stats.pendant_prefixes += 1;
            stats.worst_equality_gap = stats.worst_equality_gap.max(margin.abs() / spec.gamma);
        }
    }
    Ok(stats)
}

fn pendant_prefix_len(g: &Graph, path: &[usize]) -> usize {
    if g.degree(path[0]) != 1 {
        // a single vertex is a trivial pendant path
        return 1;
    }
    let mut len = 1;
    while len < path.len() && (len == 1 || g.degree(path[len - 1]) == 2) {
        len += 1;
    }
    len
}

struct PathBoundFold {
    tol: f64,
}

impl GraphFold for PathBoundFold {
    type Acc = PathBoundStats;

    fn empty(&self) -> PathBoundStats {
        PathBoundStats::default()
    }

    fn visit(&self, acc: &mut PathBoundStats, g: &Graph) {
        let one = path_bound_stats(g, self.tol).unwrap_or(PathBoundStats {
            graphs: 1,
            failures: 1,
            ..Default::default()
        });
        *acc = acc.merge(one);
    }

    fn merge(&self, a: PathBoundStats, b: PathBoundStats) -> PathBoundStats {
        a.merge(b)
    }
}

/// Path-bound sweep over every connected labeled graph of order `3..=max_order`.
pub fn path_bound_sweep(max_order: usize, tol: f64, threads: Option<usize>) -> Result<PathBoundStats> {
    let fold = PathBoundFold { tol };
    let mut total = PathBoundStats::default();
    for n in 3..=max_order {
        total = total.merge(scan_labeled(n, &fold, threads)?.0);
    }
    Ok(total)
}

fn path_bound(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let stats = path_bound_sweep(opts.max_order, opts.tol, opts.threads)?;
    let detail = format!(
        "orders 3..={}, {} graphs ({} with lambda1 < 2), {} eigensolver failures",
        opts.max_order, stats.graphs, stats.below_two, stats.failures
    );
    Ok(vec![
        CheckOutcome {
            suite: Suite::Lemma1.to_string(),
            check: "gamma <= f(sigma, j) / x_j on shortest min-max paths".into(),
            passed: stats.failures == 0 && stats.worst_margin >= -PATH_BOUND_SLACK,
            cases: stats.prefixes,
            worst_margin: stats.worst_margin + PATH_BOUND_SLACK,
            detail: detail.clone(),
        },
        CheckOutcome {
            suite: Suite::Lemma1.to_string(),
            check: "relative equality on pendant prefixes".into(),
            passed: stats.failures == 0 && stats.worst_equality_gap <= PATH_BOUND_SLACK,
            cases: stats.pendant_prefixes,
            worst_margin: PATH_BOUND_SLACK - stats.worst_equality_gap,
            detail,
        },
    ])
}

/// `(λ₁, margin)` for the kite, the margin being the distance to the nearer
/// end of the open interval.
pub fn kite_interval_margin(p: KiteParams, tol: f64) -> Result<(f64, f64)> {
    let lambda = principal_eigenpair(&Graph::kite(p)?, tol)?.lambda1;
    let (low, high) = kite_lambda_bounds(p.s)?;
    Ok((lambda, (lambda - low).min(high - lambda)))
}

/// Kites `r ∈ 2..=10`, `s ∈ 3..=30` that fit in a graph.
pub fn kite_interval_grid() -> impl Iterator<Item = KiteParams> {
    (2..=10usize)
        .flat_map(|r| (3..=30usize).map(move |s| KiteParams::new(r, s)))
        .filter(|p| p.vertex_count() <= MAX_VERTICES)
}

fn kite_interval(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let mut worst = (f64::INFINITY, KiteParams::new(2, 3));
    let mut cases = 0;
    for p in kite_interval_grid() {
        let (_, margin) = kite_interval_margin(p, opts.tol)?;
        cases += 1;
        if margin < worst.0 {
            worst = (margin, p);
        }
    }
    Ok(CheckOutcome {
        suite: Suite::Lemma2.to_string(),
        check: "s-1+1/(s(s-1)) < lambda1 < s-1+1/(s-1)^2".into(),
        passed: worst.0 > KITE_INTERVAL_MARGIN,
        cases,
        worst_margin: worst.0,
        detail: format!("r in 2..=10, s in 3..=30; tightest at {}", worst.1),
    })
}

fn neighbourhood_sums(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let mut worst = (f64::INFINITY, KiteParams::new(2, 3));
    let mut subsets = 0;
    let mut all_exhaustive = true;
    for r in 2..=10 {
        for s in 3..=LEMMA7_EXHAUSTIVE_LIMIT {
            let p = KiteParams::new(r, s);
            let g = Graph::kite(p)?;
            let spec = principal_eigenpair(&g, opts.tol)?;
            let report = structure_check(&g, &spec, opts.seed)?;
            subsets += report.nbhd_subsets_checked;
            all_exhaustive &= report.nbhd_exhaustive;
            if report.nbhd_min_margin < worst.0 {
                worst = (report.nbhd_min_margin, p);
            }
        }
    }
    Ok(CheckOutcome {
        suite: Suite::Lemma7.to_string(),
        check: "|U|-1 < sum_U y <= |U| for all U in N(x_k)".into(),
        passed: all_exhaustive && worst.0 > -1e-9,
        cases: subsets,
        worst_margin: worst.0,
        detail: format!(
            "kites r in 2..=10, s in 3..={LEMMA7_EXHAUSTIVE_LIMIT}, every subset; tightest at {}",
            worst.1
        ),
    })
}

/// Lambdas the series is checked at.
pub const SERIES_LAMBDAS: [f64; 5] = [3.0, 5.0, 10.0, 100.0, 1000.0];

/// Provable bound on the truncation error after `order` terms:
/// `C_order λ^{-(2 order + 1)} / (1 - 4/λ²)`, as `C_{k+1} < 4 C_k`.
pub fn series_tail_bound(lambda: f64, order: u32) -> f64 {
    const NEXT_CATALAN: [f64; 3] = [1.0, 2.0, 5.0];
    NEXT_CATALAN[order as usize - 1] * lambda.powi(-(2 * order as i32 + 1)) / (1.0 - 4.0 / (lambda * lambda))
}

fn series_accuracy() -> Vec<CheckOutcome> {
    (1..=3u32)
        .map(|order| {
            let mut worst = f64::INFINITY;
            for lambda in SERIES_LAMBDAS {
                let sigma = sigma_of_lambda(lambda).expect("lambda >= 3").sigma;
                let series = sigma_series(lambda, order).expect("order in range");
                // a few ulps of σ for the two evaluations
                let slack = 4.0 * f64::EPSILON * lambda;
                let margin = (series_tail_bound(lambda, order) + slack - (series - sigma).abs()) / lambda.powi(-(2 * order as i32 + 1));
                worst = worst.min(margin);
            }
            CheckOutcome {
                suite: Suite::SigmaSeries.to_string(),
                check: format!("order {order}: |series - sigma| <= tail bound"),
                passed: worst >= 0.0,
                cases: SERIES_LAMBDAS.len() as u64,
                worst_margin: worst,
                detail: format!(
                    "lambda in {SERIES_LAMBDAS:?}; margin in units of lambda^-{}",
                    2 * order + 1
                ),
            }
        })
        .collect()
}
