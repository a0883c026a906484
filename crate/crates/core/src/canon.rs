//! Isomorphism-invariant codes for small graphs: the lexicographically
//! smallest upper-triangle bit string over all vertex orders.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::graph6;

/// Largest order accepted by the permutation search.
pub const MAX_CANONICAL_ORDER: usize = 10;

/// graph6 text of the canonical relabeling. graph6 stores the upper triangle
/// column by column, so string order matches bit-string order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    canonical_form(g).map(|(code, _)| code)
}

/// The canonical code together with the relabeled graph that realises it.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalCode, Graph)> {
    let n = g.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::OutOfRange(format!(
            "canonical code needs n <= {MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let mut search = Search {
        g,
        order: Vec::with_capacity(n),
        columns: Vec::with_capacity(n),
        best_columns: Vec::new(),
        best_order: Vec::new(),
    };
    search.descend(0, false);

    // best_order[pos] = old vertex; permute wants old -> new
    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    let h = g.permute(&perm)?;
    Ok((CanonicalCode(graph6::encode(&h)), h))
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    columns: Vec<u64>,
    best_columns: Vec<u64>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    /// Column value of `w` placed after the current prefix; earlier
    /// positions occupy higher bits.
    fn column(&self, w: usize) -> u64 {
        let row = self.g.row(w);
        self.order
            .iter()
            .fold(0u64, |acc, &u| (acc << 1) | ((row & bit(u)) != 0) as u64)
    }

    /// `below` is true once the current prefix is strictly smaller than the
    /// best complete order found so far.
    fn descend(&mut self, used: u64, below: bool) {
        let n = self.g.n();
        let depth = self.order.len();
        if depth == n {
            if below || self.best_order.is_empty() {
                self.best_columns = self.columns.clone();
                self.best_order = self.order.clone();
            }
            return;
        }
        let mut min = u64::MAX;
        for w in (0..n).filter(|&w| used & bit(w) == 0) {
            min = min.min(self.column(w));
        }
        let mut below = below;
        if !below && !self.best_order.is_empty() {
            let best = self.best_columns[depth];
            if min > best {
                return;
            }
            below = min < best;
        }
        for w in 0..n {
            if used & bit(w) != 0 || self.column(w) != min {
                continue;
            }
            self.order.push(w);
            self.columns.push(min);
            self.descend(used | bit(w), below);
            self.order.pop();
            self.columns.pop();
            // a completed order may now bound the remaining siblings
            if below && !self.best_order.is_empty() && self.best_columns[..depth] == self.columns[..] {
                below = self.best_columns[depth] > min;
            }
        }
    }
}
