use std::collections::BTreeMap;
use std::io::BufRead;

use serde::Serialize;

use super::kite::is_kite;
use super::scan::{ingest_graph6, scan_labeled, Diagnostic, GraphFold};
use super::structure::{structure_check, StructureReport};
use crate::canon::{canonical_form, MAX_CANONICAL_ORDER};
use crate::closed_form::pendant_path_gamma;
use crate::error::{Error, Result};
use crate::graph::{Graph, KiteParams};
use crate::graph6;
use crate::spectral::{principal_eigenpair, SpectralData, DEFAULT_TOLERANCE};

/// Near-tie window in units of the eigensolver tolerance. Two graphs whose
/// `ln γ` differ by less than this cannot be ordered reliably.
const TIE_WINDOW_FACTOR: f64 = 1e4;
/// Extra room given to the upper-bound prune for rounding.
const PRUNE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub tol: f64,
    pub threads: Option<usize>,
    /// Skip graphs whose ratio provably cannot reach the best kite.
    pub prune: bool,
    /// Seed for the sampled neighbourhood check of the audit.
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            tol: DEFAULT_TOLERANCE,
            threads: None,
            prune: true,
            seed: 0,
        }
    }
}

impl SearchOptions {
    pub fn tie_window(&self) -> f64 {
        TIE_WINDOW_FACTOR * self.tol
    }
}

pub enum Source<R> {
    /// Every connected labeled graph on `n` vertices.
    Labeled(usize),
    /// A graph6 stream, one graph per line.
    Graph6(R),
}

/// A graph within the tie window of the maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contender {
    /// Canonical graph6 for `n <= 10`, the graph6 as read otherwise.
    pub code: String,
    pub log_gamma: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    #[serde(skip)]
    pub best: Graph,
    pub best_graph6: String,
    pub log_gamma: f64,
    pub kite: Option<KiteParams>,
    pub audit: StructureReport,
    pub graphs_scanned: u64,
    /// Graphs whose eigenpair was computed; the rest were pruned.
    pub evaluated: u64,
    pub pruned: u64,
    pub contenders: Vec<Contender>,
    pub tie_flagged: bool,
    pub tie_window: f64,
    pub spectral: SpectralData,
    pub diagnostics: Vec<Diagnostic>,
}

/// Upper bound on `ln γ(g)` for graphs with a cycle: `γ ≤ u_d(λ)` along a
/// shortest min-to-max path of at most `d + 1` vertices, `d` the diameter,
/// with `λ` replaced by `min(Δ, sqrt(max_v Σ_{u~v} d_u)) ≥ λ₁`. `None` for
/// trees, where `λ₁` may fall below 2, and for disconnected graphs.
pub fn log_gamma_upper_bound(g: &Graph) -> Option<f64> {
    if g.edge_count() < g.n() {
        return None;
    }
    let diameter = g.diameter()?;
    let lambda = lambda_upper_bound(g);
    pendant_path_gamma(diameter + 1, lambda).ok()
}

fn lambda_upper_bound(g: &Graph) -> f64 {
    let two_step = (0..g.n())
        .map(|v| g.neighbors(v).map(|u| g.degree(u)).sum::<usize>())
        .max()
        .unwrap_or(0);
    (g.max_degree() as f64).min((two_step as f64).sqrt()).max(2.0)
}

/// For each diameter `d`, the smallest `λ` at which `ln u_d(λ)` reaches
/// `target`; graphs whose `λ` bound stays below it cannot get there.
fn lambda_thresholds(n: usize, target: f64) -> Vec<f64> {
    let reach = |d: usize, lambda: f64| pendant_path_gamma(d + 1, lambda).unwrap_or(f64::INFINITY);
    let top = (n - 1) as f64;
    (0..n)
        .map(|d| {
            if reach(d, 2.0) >= target {
                return 2.0;
            }
            if reach(d, top) < target {
                return f64::INFINITY;
            }
            let (mut lo, mut hi) = (2.0, top);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if reach(d, mid) >= target {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            lo
        })
        .collect()
}

/// `ln γ` of the best kite on `n` vertices, computed exactly as the scan
/// would compute it for the same labeled graph.
fn best_kite_log_gamma(n: usize, tol: f64) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for r in 1..n {
        let p = KiteParams::new(r, n + 1 - r);
        best = best.max(principal_eigenpair(&Graph::kite(p)?, tol)?.log_gamma());
    }
    Ok(best)
}

/// Partial result of the extremal fold.
#[derive(Debug, Clone, Default)]
pub struct ExtremalAcc {
    pub max: f64,
    /// Graphs within the window of `max`, keyed by code.
    pub candidates: BTreeMap<String, (f64, Graph)>,
    pub evaluated: u64,
    pub pruned: u64,
    pub failures: u64,
    /// Bit `n - 1` set for each order seen.
    pub orders: u64,
}

impl ExtremalAcc {
    fn empty() -> Self {
        ExtremalAcc {
            max: f64::NEG_INFINITY,
            ..Default::default()
        }
    }
}

/// Keeps every graph within the tie window of the running maximum. Codes are
/// computed only for graphs that reach the window, never in bulk.
pub struct ExtremalFold {
    tol: f64,
    window: f64,
    floor: f64,
    thresholds: Option<Vec<f64>>,
}

impl ExtremalFold {
    pub fn new(tol: f64, window: f64) -> Self {
        ExtremalFold {
            tol,
            window,
            floor: f64::NEG_INFINITY,
            thresholds: None,
        }
    }

    /// Assume a graph with `ln γ = floor` is part of the input, and skip
    /// graphs whose upper bound falls short of it.
    pub fn with_floor(mut self, n: usize, floor: f64) -> Self {
        self.floor = floor;
        self.thresholds = Some(lambda_thresholds(n, floor - self.window - PRUNE_SLACK));
        self
    }

    fn cutoff(&self, max: f64) -> f64 {
        max.max(self.floor) - self.window
    }

    fn trim(&self, acc: &mut ExtremalAcc) {
        let cutoff = self.cutoff(acc.max);
        acc.candidates.retain(|_, (lg, _)| *lg >= cutoff);
    }

    fn pruned_by_bound(&self, g: &Graph) -> bool {
        let Some(thresholds) = &self.thresholds else {
            return false;
        };
        if g.edge_count() < g.n() {
            return false;
        }
        match g.diameter() {
            Some(d) => lambda_upper_bound(g) < thresholds[d],
            None => false,
        }
    }
}

impl GraphFold for ExtremalFold {
    type Acc = ExtremalAcc;

    fn empty(&self) -> ExtremalAcc {
        ExtremalAcc::empty()
    }

    fn visit(&self, acc: &mut ExtremalAcc, g: &Graph) {
        acc.orders |= 1 << (g.n() - 1);
        if self.pruned_by_bound(g) {
            acc.pruned += 1;
            return;
        }
        acc.evaluated += 1;
        let lg = match principal_eigenpair(g, self.tol) {
            Ok(spec) => spec.log_gamma(),
            Err(_) => {
                acc.failures += 1;
                return;
            }
        };
        if lg < self.cutoff(acc.max) {
            return;
        }
        let (key, graph) = if g.n() <= MAX_CANONICAL_ORDER {
            let (code, canon) = canonical_form(g).expect("order checked");
            (code.as_str().to_owned(), canon)
        } else {
            (graph6::encode(g), g.clone())
        };
        let entry = acc.candidates.entry(key).or_insert((lg, graph));
        entry.0 = entry.0.max(lg);
        if lg > acc.max {
            acc.max = lg;
            self.trim(acc);
        }
    }

    fn merge(&self, mut a: ExtremalAcc, b: ExtremalAcc) -> ExtremalAcc {
        for (key, (lg, graph)) in b.candidates {
            let entry = a.candidates.entry(key).or_insert((lg, graph));
            entry.0 = entry.0.max(lg);
        }
        a.max = a.max.max(b.max);
        a.evaluated += b.evaluated;
        a.pruned += b.pruned;
        a.failures += b.failures;
        a.orders |= b.orders;
        self.trim(&mut a);
        a
    }
}

/// The connected graph of largest principal ratio in `source`.
///
/// Graphs within the tie window of the maximum are all reported; the witness
/// is the one with the smallest code, and the tie is flagged when there is
/// more than one.
pub fn find_extremal<R: BufRead>(source: Source<R>, opts: &SearchOptions) -> Result<SearchResult> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::OutOfRange(format!("tolerance {} must be positive", opts.tol)));
    }
    let window = opts.tie_window();
    let base = ExtremalFold::new(opts.tol, window);
    let (acc, scanned, diagnostics) = match source {
        Source::Labeled(n) => {
            let fold = if opts.prune && n >= 4 {
                base.with_floor(n, best_kite_log_gamma(n, opts.tol)?)
            } else {
                base
            };
            let (acc, stats) = scan_labeled(n, &fold, opts.threads)?;
            (acc, stats.connected, Vec::new())
        }
        Source::Graph6(reader) => {
            let (acc, stats) = ingest_graph6(reader, &base, opts.threads)?;
            (acc, stats.consumed, stats.diagnostics)
        }
    };
    if acc.failures > 0 {
        return Err(Error::ScanFailures(acc.failures));
    }
    if acc.orders.count_ones() > 1 {
        return Err(Error::OutOfRange("input mixes graphs of different orders".into()));
    }
    let (code, (_, best)) = acc
        .candidates
        .iter()
        .next()
        .map(|(k, v)| (k.clone(), v.clone()))
        .ok_or(Error::EmptySource)?;
    let contenders: Vec<Contender> = acc
        .candidates
        .iter()
        .map(|(code, (lg, _))| Contender {
            code: code.clone(),
            log_gamma: *lg,
        })
        .collect();

    let spectral = principal_eigenpair(&best, opts.tol)?;
    let audit = structure_check(&best, &spectral, opts.seed)?;
    Ok(SearchResult {
        n: best.n(),
        kite: is_kite(&best),
        best_graph6: code,
        log_gamma: spectral.log_gamma(),
        audit,
        graphs_scanned: scanned,
        evaluated: acc.evaluated,
        pruned: acc.pruned,
        tie_flagged: contenders.len() > 1,
        contenders,
        tie_window: window,
        spectral,
        diagnostics,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{BufReader, Cursor};

    type Empty = BufReader<Cursor<Vec<u8>>>;

    fn labeled(n: usize, prune: bool) -> SearchResult {
        let opts = SearchOptions {
            prune,
            ..Default::default()
        };
        find_extremal::<Empty>(Source::Labeled(n), &opts).unwrap()
    }

    #[test]
    fn three_vertices() {
        let r = labeled(3, true);
        assert_eq!(r.graphs_scanned, 4);
        assert_eq!(r.kite, Some(KiteParams::new(2, 2)));
        assert!((r.log_gamma - 0.5 * 2f64.ln()).abs() < 1e-11);
        assert_eq!(r.best_graph6, "BW");
        assert!(!r.tie_flagged);
    }

    // winners from the networkx graph atlas, ratios from numpy.linalg.eigh
    #[test]
    fn small_winners_are_kites() {
        for (n, code, kite, lg) in [
            (4, "CN", KiteParams::new(2, 3), 0.774767022346189),
            (5, "DJc", KiteParams::new(3, 3), 1.36179978493385),
            (6, "E~AG", KiteParams::new(3, 4), 2.15040744051111),
        ] {
            let r = labeled(n, true);
            assert_eq!(r.kite, Some(kite), "n={n}");
            assert!((r.log_gamma - lg).abs() < 1e-9, "n={n}");
            assert_eq!(r.best.n(), n);
            assert!(is_kite(&graph6::decode(code).unwrap()) == Some(kite));
        }
    }

    #[test]
    fn pruning_does_not_change_the_winner() {
        for n in 4..=6 {
            let (a, b) = (labeled(n, true), labeled(n, false));
            assert_eq!(a.best_graph6, b.best_graph6);
            assert_eq!(a.log_gamma, b.log_gamma);
            assert_eq!(a.graphs_scanned, b.graphs_scanned);
            assert_eq!(b.pruned, 0);
            assert_eq!(a.pruned > 0, n > 4);
        }
    }

    #[test]
    fn bound_dominates_ratio() {
        for g in [
            Graph::kite(KiteParams::new(3, 4)).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::pineapple(4, 3).unwrap(),
        ] {
            let lg = principal_eigenpair(&g, 1e-12).unwrap().log_gamma();
            assert!(lg <= log_gamma_upper_bound(&g).unwrap() + 1e-12);
        }
        assert_eq!(log_gamma_upper_bound(&Graph::path(5).unwrap()), None);
    }

    #[test]
    fn graph6_source() {
        let text = "Bw\nBg\nbad\nBo\n";
        let r = find_extremal(Source::Graph6(Cursor::new(text)), &SearchOptions::default()).unwrap();
        assert_eq!(r.graphs_scanned, 3);
        assert_eq!(r.diagnostics.len(), 1);
        assert_eq!(r.diagnostics[0].line, 3);
        // Bg and Bo are the same path up to labels
        assert_eq!(r.contenders.len(), 1);
        assert_eq!(r.best_graph6, "BW");

        let empty = find_extremal(Source::Graph6(Cursor::new("")), &SearchOptions::default());
        assert_eq!(empty.unwrap_err(), Error::EmptySource);
        let mixed = find_extremal(Source::Graph6(Cursor::new("Bw\nC~\n")), &SearchOptions::default());
        assert!(mixed.is_err());
    }

    #[test]
    fn regular_graphs_tie() {
        // C4 and K4 both have ratio 1
        let r = find_extremal(Source::Graph6(Cursor::new("C~\nCl\n")), &SearchOptions::default()).unwrap();
        assert!(r.tie_flagged);
        assert_eq!(r.contenders.len(), 2);
        assert!(r.audit.vacuous);
    }
}
