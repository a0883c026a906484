//! Certified Perron eigenpairs of adjacency matrices and the principal ratio.
//!
//! The iteration runs on `A + I`. Shifting every eigenvalue up by one makes
//! the Perron root strictly dominant in magnitude, bipartite graphs included,
//! while leaving the eigenvectors unchanged. Starting from the all-ones vector
//! keeps every iterate strictly positive on a connected graph.
//!
//! Convergence needs the max-norm residual below `tol` and, entry by entry,
//! `|(A v)_i - λ v_i| ≤ tol (λ + 1) v_i`. The second test matters once the
//! ratio is large: an absolute residual of `1e-12` says nothing about an entry
//! of size `1e-9`, and that entry is the whole of `γ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, MAX_VERTICES};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

/// A Perron eigenpair of a connected graph, certified by its residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralData {
    pub lambda1: f64,
    /// Eigenvector indexed by vertex, scaled so the largest entry is exactly 1.
    pub v: Vec<f64>,
    /// `max_i |(A v)_i - lambda1 v_i|`.
    pub residual: f64,
    /// `max_i |(A v)_i - lambda1 v_i| / ((lambda1 + 1) v_i)`.
    pub relative_residual: f64,
    /// Largest entry over smallest entry.
    pub gamma: f64,
    /// Tolerance the residual was certified against.
    pub tolerance: f64,
    /// Lowest-index vertex holding the smallest entry.
    pub min_vertex: usize,
    /// Lowest-index vertex holding the largest entry.
    pub max_vertex: usize,
    pub iterations: usize,
}

impl SpectralData {
    pub fn log_gamma(&self) -> f64 {
        // the largest entry is exactly 1
        -self.v[self.min_vertex].ln()
    }

    pub fn min_entry(&self) -> f64 {
        self.v[self.min_vertex]
    }
}

pub fn principal_eigenpair(g: &Graph, tol: f64) -> Result<SpectralData> {
    principal_eigenpair_with_cap(g, tol, DEFAULT_MAX_ITERATIONS)
}

pub fn principal_eigenpair_with_cap(g: &Graph, tol: f64, max_iterations: usize) -> Result<SpectralData> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::OutOfRange(format!("tolerance {tol} must be positive")));
    }
    g.require_connected()?;
    let n = g.n();
    let rows = g.rows();

    let mut v = [1.0f64; MAX_VERTICES];
    let mut av = [0.0f64; MAX_VERTICES];
    let mut iterations = 0;
    let (lambda1, residual, relative_residual) = loop {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let s: f64 = Bits(rows[i]).map(|j| v[j]).sum();
            av[i] = s;
            num += v[i] * s;
            den += v[i] * v[i];
        }
        let rq = num / den;
        let mut residual = 0.0f64;
        let mut relative = 0.0f64;
        for i in 0..n {
            let r = (av[i] - rq * v[i]).abs();
            residual = residual.max(r);
            relative = relative.max(r / ((rq + 1.0) * v[i]));
        }
        if residual <= tol && relative <= tol {
            break (rq, residual, relative);
        }
        if iterations >= max_iterations {
            return Err(Error::NoConvergence {
                iterations,
                residual: residual.max(relative),
                tolerance: tol,
            });
        }
        iterations += 1;
        let mut top = 0.0f64;
        for i in 0..n {
            av[i] += v[i];
            top = top.max(av[i]);
        }
        for i in 0..n {
            v[i] = av[i] / top;
        }
    };

    let v = v[..n].to_vec();
    let (mut min_vertex, mut max_vertex) = (0, 0);
    for (i, &x) in v.iter().enumerate() {
        if x < v[min_vertex] {
            min_vertex = i;
        }
        if x > v[max_vertex] {
            max_vertex = i;
        }
    }
    let top = v[max_vertex];
    let v: Vec<f64> = if top == 1.0 { v } else { v.iter().map(|x| x / top).collect() };
    Ok(SpectralData {
        lambda1,
        gamma: 1.0 / v[min_vertex],
        residual,
        relative_residual,
        tolerance: tol,
        min_vertex,
        max_vertex,
        iterations,
        v,
    })
}

/// `x^T A x / x^T x`.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    let den: f64 = x.iter().map(|a| a * a).sum();
    if den == 0.0 {
        return Err(Error::ZeroVector);
    }
    let num: f64 = (0..g.n())
        .map(|i| x[i] * g.neighbors(i).map(|j| x[j]).sum::<f64>())
        .sum();
    Ok(num / den)
}

/// `max_i |(A x)_i - lambda x_i|`.
pub fn residual(g: &Graph, x: &[f64], lambda: f64) -> Result<f64> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    Ok((0..g.n())
        .map(|i| (g.neighbors(i).map(|j| x[j]).sum::<f64>() - lambda * x[i]).abs())
        .fold(0.0, f64::max))
}

pub fn principal_ratio(g: &Graph, tol: f64) -> Result<f64> {
    principal_eigenpair(g, tol).map(|s| s.gamma)
}
