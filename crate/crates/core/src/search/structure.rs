use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{self, SpectralData};

/// Neighbourhoods up to this size get every subset checked; larger ones are
/// sampled.
pub const LEMMA7_EXHAUSTIVE_LIMIT: usize = 15;
const LEMMA7_SAMPLES: usize = 1000;
const LEMMA7_SLACK: f64 = 1e-9;
/// Ratios this close to 1 count as regular: no min-to-max path exists.
const REGULAR_GAMMA: f64 = 1e-9;

/// Path structure between the smallest and largest eigenvector entries.
///
/// `x_1, ..., x_k` is the shortest path from the min-entry vertex to the
/// max-entry vertex and `C` is everything off that path. When the ratio is 1
/// the path collapses to one vertex and the path flags hold vacuously.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub path: Vec<usize>,
    pub k: usize,
    pub c_size: usize,
    /// `λ₁ > n - k`.
    pub lambda_gt_nk: bool,
    /// Longest `i` such that `x_1, ..., x_i` is a pendant path.
    pub pendant_prefix_len: usize,
    /// `x_k` is adjacent to every vertex of `C`.
    pub xk_dominates: bool,
    pub deg_xk2: Option<usize>,
    pub deg_xk1: Option<usize>,
    /// `|U| - 1 < Σ_{y ∈ U} y ≤ |U|` for every checked non-empty `U ⊆ N(x_k)`.
    pub nbhd_sum_ok: bool,
    pub nbhd_subsets_checked: u64,
    pub nbhd_exhaustive: bool,
    /// Smallest slack over both sides of the subset inequality.
    pub nbhd_min_margin: f64,
    /// `11 |C| / sqrt(ln n)`, a bound on `deg(x_{k-1})`; reported only.
    pub lemma9_bound: Option<f64>,
    pub lemma9_holds: Option<bool>,
    pub vacuous: bool,
}

/// Longest pendant prefix of `path`: `x_1` of degree 1 followed by degree-2
/// vertices. The path is shortest, hence induced.
fn pendant_prefix(g: &Graph, path: &[usize]) -> usize {
    if g.degree(path[0]) != 1 {
        return 0;
    }
    let mut len = 1;
    while len < path.len() && (len == 1 || g.degree(path[len - 1]) == 2) {
        len += 1;
    }
    len
}

/// Smallest margin of `|U| - 1 < Σ_U y ≤ |U|` over the non-empty subsets of
/// `values`.
fn subset_margins(values: &[f64], seed: u64) -> (f64, u64, bool) {
    let margin = |sum: f64, size: usize| (sum - (size as f64 - 1.0)).min(size as f64 - sum);
    if values.len() <= LEMMA7_EXHAUSTIVE_LIMIT {
        let count = 1usize << values.len();
        let mut sums = vec![0.0f64; count];
        // the empty set meets the upper bound with equality; skip it
        let mut worst = f64::INFINITY;
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)] + values[low];
            worst = worst.min(margin(sums[mask], mask.count_ones() as usize));
        }
        (worst, count as u64 - 1, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = f64::INFINITY;
        let mut drawn = 0;
        while drawn < LEMMA7_SAMPLES {
            let mut sum = 0.0;
            let mut size = 0;
            for &y in values {
                if rng.gen_bool(0.5) {
                    sum += y;
                    size += 1;
                }
            }
            if size > 0 {
                worst = worst.min(margin(sum, size));
                drawn += 1;
            }
        }
        (worst, LEMMA7_SAMPLES as u64, false)
    }
}

/// Audit the min-to-max path of `g` against the structure an extremal graph
/// must have. `seed` drives subset sampling for neighbourhoods larger than
/// [`LEMMA7_EXHAUSTIVE_LIMIT`].
pub fn structure_check(g: &Graph, spec: &SpectralData, seed: u64) -> Result<StructureReport> {
    let residual = if spec.v.len() == g.n() {
        spectral::residual(g, &spec.v, spec.lambda1)?
    } else {
        f64::INFINITY
    };
    if !(residual <= spec.tolerance) {
        return Err(Error::StaleSpectrum {
            residual,
            tolerance: spec.tolerance,
        });
    }
    let n = g.n();
    let vacuous = spec.gamma - 1.0 <= REGULAR_GAMMA;
    let xk = spec.max_vertex;
    let x1 = if vacuous { xk } else { spec.min_vertex };
    let path = g.shortest_path(x1, xk).ok_or(Error::Disconnected(x1, xk))?;
    let k = path.len();

    let on_path = path.iter().fold(0u64, |acc, &v| acc | (1 << v));
    let off_path = (0..n).filter(|&v| on_path & (1 << v) == 0);
    let xk_dominates = vacuous || off_path.clone().all(|v| g.has_edge(xk, v));
    let pendant_prefix_len = if vacuous { k } else { pendant_prefix(g, &path) };
    let deg_xk1 = (k >= 2).then(|| g.degree(path[k - 2]));
    let deg_xk2 = (k >= 3).then(|| g.degree(path[k - 3]));

    let values: Vec<f64> = g.neighbors(xk).map(|y| spec.v[y]).collect();
    let (margin, checked, exhaustive) = subset_margins(&values, seed);

    let c_size = n - k;
    let ln_n = (n as f64).ln();
    let lemma9_bound = (k >= 2 && ln_n > 0.0).then(|| 11.0 * c_size as f64 / ln_n.sqrt());
    let lemma9_holds = lemma9_bound.zip(deg_xk1).map(|(b, d)| (d as f64) < b);

    Ok(StructureReport {
        k,
        c_size,
        lambda_gt_nk: spec.lambda1 > c_size as f64,
        pendant_prefix_len,
        xk_dominates,
        deg_xk2,
        deg_xk1,
        nbhd_sum_ok: margin > -LEMMA7_SLACK,
        nbhd_subsets_checked: checked,
        nbhd_exhaustive: exhaustive,
        nbhd_min_margin: margin,
        lemma9_bound,
        lemma9_holds,
        vacuous,
        path,
    })
}
