//! Degree- and spectrum-based irregularity measures, all zero (or one, for
//! the principal ratio) exactly on regular graphs.
//!
//! Degree sums are accumulated as integers scaled by `n`, so each measure is
//! a single division away from exact.

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::spectral::{self, SpectralData};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IrregularityReport {
    pub gamma: f64,
    pub epsilon: f64,
    pub variance: f64,
    pub albertson: u64,
    pub s_measure: f64,
}

/// `n·d_v - 2|E|`, i.e. `n` times the deviation from the average degree.
fn scaled_deviations(g: &Graph) -> impl Iterator<Item = i64> + '_ {
    let n = g.n() as i64;
    let twice_m = 2 * g.edge_count() as i64;
    (0..g.n()).map(move |v| n * g.degree(v) as i64 - twice_m)
}

pub fn average_degree(g: &Graph) -> f64 {
    2.0 * g.edge_count() as f64 / g.n() as f64
}

/// `λ₁ - d̄`.
pub fn epsilon_irregularity(g: &Graph, tol: f64) -> Result<f64> {
    let spec = spectral::principal_eigenpair(g, tol)?;
    Ok(epsilon_from(g, &spec))
}

fn epsilon_from(g: &Graph, spec: &SpectralData) -> f64 {
    // λ₁ ≥ d̄ always; clamp the rounding on regular graphs
    (spec.lambda1 - average_degree(g)).max(0.0)
}

/// Population variance of the degree sequence.
pub fn variance(g: &Graph) -> f64 {
    let n = g.n() as f64;
    let sum: i64 = scaled_deviations(g).map(|d| d * d).sum();
    sum as f64 / (n * n * n)
}

/// `Σ_{uv ∈ E} |d(u) - d(v)|`.
pub fn albertson(g: &Graph) -> u64 {
    g.edges()
        .map(|(u, v)| g.degree(u).abs_diff(g.degree(v)) as u64)
        .sum()
}

/// `Σ_v |d(v) - d̄|`.
pub fn s_irregularity(g: &Graph) -> f64 {
    let sum: i64 = scaled_deviations(g).map(i64::abs).sum();
    sum as f64 / g.n() as f64
}

pub fn report_all(g: &Graph, tol: f64) -> Result<IrregularityReport> {
    let spec = spectral::principal_eigenpair(g, tol)?;
    Ok(report_from(g, &spec))
}

/// All measures from an already certified eigenpair of `g`.
pub fn report_from(g: &Graph, spec: &SpectralData) -> IrregularityReport {
    IrregularityReport {
        gamma: spec.gamma,
        epsilon: epsilon_from(g, spec),
        variance: variance(g),
        albertson: albertson(g),
        s_measure: s_irregularity(g),
    }
}
