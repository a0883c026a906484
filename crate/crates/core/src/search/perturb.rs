use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::principal_eigenpair;

/// Measured effect of one edge edit on `λ₁`, on the eigenvector entry of a
/// tracked vertex, and on `ln γ`. Both eigenvectors are scaled to max 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub edge: (usize, usize),
    pub removed: bool,
    pub tracked: usize,
    pub n_for_condition: usize,
    pub lambda_before: f64,
    pub lambda_after: f64,
    /// `λ₁⁺ = (1 + δ₁) λ₁`.
    pub delta1: f64,
    /// `x⁺ = (1 + δ₂) x` at the tracked vertex.
    pub delta2: f64,
    pub log_gamma_before: f64,
    pub log_gamma_after: f64,
    /// `δ₁ > 4 δ₂ / n`: predicts the ratio goes up.
    pub increase_condition: bool,
    /// `δ₁ exp(2 δ₁ λ₁ ln n) < δ₂ / (3n)`: predicts the ratio goes down.
    pub decrease_condition: bool,
    pub observed_increase: bool,
    /// The largest entry sits on a different vertex after the edit.
    pub max_vertex_moved: bool,
}

fn compare(
    before: &Graph,
    after: &Graph,
    edge: (usize, usize),
    removed: bool,
    tracked: usize,
    n_for_condition: usize,
    tol: f64,
) -> Result<PerturbationReport> {
    if tracked >= before.n() {
        return Err(Error::OutOfRange(format!(
            "tracked vertex {tracked} not in 0..{}",
            before.n()
        )));
    }
    if n_for_condition < 2 {
        return Err(Error::OutOfRange("condition order must be at least 2".into()));
    }
    let a = principal_eigenpair(before, tol)?;
    let b = principal_eigenpair(after, tol)?;
    let delta1 = b.lambda1 / a.lambda1 - 1.0;
    let delta2 = b.v[tracked] / a.v[tracked] - 1.0;
    let n = n_for_condition as f64;
    let (lg_a, lg_b) = (a.log_gamma(), b.log_gamma());
    Ok(PerturbationReport {
        edge,
        removed,
        tracked,
        n_for_condition,
        lambda_before: a.lambda1,
        lambda_after: b.lambda1,
        delta1,
        delta2,
        log_gamma_before: lg_a,
        log_gamma_after: lg_b,
        increase_condition: delta1 > 4.0 * delta2 / n,
        decrease_condition: delta1 * (2.0 * delta1 * a.lambda1 * n.ln()).exp() < delta2 / (3.0 * n),
        observed_increase: lg_b > lg_a,
        max_vertex_moved: a.max_vertex != b.max_vertex,
    })
}

/// Add the absent edge `edge` to the connected graph `g`.
pub fn perturb_analysis(
    g: &Graph,
    edge: (usize, usize),
    tracked: usize,
    n_for_condition: usize,
    tol: f64,
) -> Result<PerturbationReport> {
    g.require_connected()?;
    let after = g.with_edge(edge.0, edge.1)?;
    compare(g, &after, edge, false, tracked, n_for_condition, tol)
}

/// Remove `edge` from `g`; the result must stay connected.
pub fn perturb_deletion(
    g: &Graph,
    edge: (usize, usize),
    tracked: usize,
    n_for_condition: usize,
    tol: f64,
) -> Result<PerturbationReport> {
    g.require_connected()?;
    let after = g.without_edge(edge.0, edge.1)?;
    compare(g, &after, edge, true, tracked, n_for_condition, tol)
}
