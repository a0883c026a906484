//! Simple undirected graphs on at most 64 vertices, one `u64` adjacency row
//! per vertex, and constructors for the families used throughout the crate.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count: an adjacency row is one machine word.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Parameters of the kite `P_r · K_s`: a path on `r` vertices whose end vertex
/// is identified with one vertex of a complete graph on `s` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KiteParams {
    pub r: usize,
    pub s: usize,
}

impl KiteParams {
    pub fn new(r: usize, s: usize) -> Self {
        KiteParams { r, s }
    }

    pub fn vertex_count(&self) -> usize {
        // saturating so absurd parameters fail the size check instead of wrapping
        self.r.saturating_add(self.s).saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.r
            .saturating_sub(1)
            .saturating_add(self.s.saturating_mul(self.s.saturating_sub(1)) / 2)
    }

    /// Index of the vertex shared by the path and the clique.
    pub fn attachment(&self) -> usize {
        self.r - 1
    }
}

impl fmt::Display for KiteParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}·K_{}", self.r, self.s)
    }
}

/// A simple undirected graph. Immutable once built; every edit returns a new
/// value.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::OutOfRange(format!(
                "vertex count {n} not in 1..={MAX_VERTICES}"
            )));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::OutOfRange(format!("self-loop at vertex {u}")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Build from raw adjacency rows, checking symmetry and irreflexivity.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let mut g = Graph::empty(rows.len())?;
        let n = rows.len();
        for (v, &row) in rows.iter().enumerate() {
            if row & !low_bits(n) != 0 {
                return Err(Error::OutOfRange(format!(
                    "row {v} references vertices beyond {n}"
                )));
            }
            if row & bit(v) != 0 {
                return Err(Error::OutOfRange(format!("self-loop at vertex {v}")));
            }
            g.adj[v] = row;
        }
        for u in 0..n {
            for w in Bits(rows[u]) {
                if rows[w] & bit(u) == 0 {
                    return Err(Error::OutOfRange(format!(
                        "rows are not symmetric at ({u}, {w})"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Caller guarantees `n` is in range and `rows` is symmetric and loop-free.
    #[inline]
    pub(crate) fn from_rows_unchecked(n: usize, rows: &[u64]) -> Self {
        let mut adj = [0; MAX_VERTICES];
        adj[..n].copy_from_slice(&rows[..n]);
        Graph { n, adj }
    }

    /// Overwrite the rows of a graph of the same order; same contract as
    /// [`Graph::from_rows_unchecked`].
    #[inline]
    pub(crate) fn set_rows_unchecked(&mut self, rows: &[u64]) {
        debug_assert_eq!(rows.len(), self.n);
        self.adj[..self.n].copy_from_slice(rows);
    }

    #[inline]
    fn insert(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency rows, one per vertex.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |v| Bits(self.adj[v] & low_bits(v)).map(move |u| (u, v)))
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::EdgePresent(u, v));
        }
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::OutOfRange(format!(
                "({u}, {v}) is not a vertex pair of a graph on {} vertices",
                self.n
            )));
        }
        Ok(())
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::OutOfRange("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Vertices reachable from `start`, as a bitset.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == low_bits(self.n)
    }

    /// For a disconnected graph, the lowest-index pair of vertices with no path
    /// between them: vertex 0 and the first vertex it cannot reach.
    pub fn separated_pair(&self) -> Option<(usize, usize)> {
        let missing = low_bits(self.n) & !self.component_of(0);
        (missing != 0).then(|| (0, missing.trailing_zeros() as usize))
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.separated_pair() {
            Some((u, v)) => Err(Error::Disconnected(u, v)),
            None => Ok(()),
        }
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut seen = bit(source);
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
            for v in Bits(frontier) {
                dist[v] = Some(d);
            }
        }
        dist
    }

    /// Largest eccentricity, or `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let full = low_bits(self.n);
        let mut diam = 0;
        for s in 0..self.n {
            let mut seen = bit(s);
            let mut frontier = seen;
            let mut ecc = 0;
            while seen != full {
                let mut next = 0;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !seen;
                if frontier == 0 {
                    return None;
                }
                seen |= frontier;
                ecc += 1;
            }
            diam = diam.max(ecc);
        }
        Some(diam)
    }

    /// Shortest path from `from` to `to` (both included). Among shortest
    /// paths, each step takes the lowest-index admissible vertex.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let dist = self.distances_from(to);
        let mut d = dist[from]?;
        let mut path = vec![from];
        let mut cur = from;
        while d > 0 {
            d -= 1;
            cur = self
                .neighbors(cur)
                .find(|&w| dist[w] == Some(d))
                .expect("breadth-first layers are consecutive");
            path.push(cur);
        }
        Some(path)
    }

    // ---- named families -------------------------------------------------

    /// `P_r · K_s`. Vertices `0..r` are the path with vertex 0 the pendant end;
    /// vertex `r - 1` is the attachment; vertices `r - 1 ..= r + s - 2` form
    /// the clique.
    pub fn kite(p: KiteParams) -> Result<Graph> {
        if p.r < 1 || p.s < 2 || p.vertex_count() > MAX_VERTICES {
            return Err(Error::OutOfRange(format!(
                "kite needs r >= 1, s >= 2 and r + s - 1 <= {MAX_VERTICES}, got r={}, s={}",
                p.r, p.s
            )));
        }
        let n = p.vertex_count();
        let mut g = Graph::empty(n)?;
        for i in 0..p.r - 1 {
            g.insert(i, i + 1);
        }
        let first = p.r - 1;
        for u in first..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        Ok(g)
    }

    /// `K_clique` with `pendants` extra leaves all hanging off clique vertex 0.
    pub fn pineapple(clique: usize, pendants: usize) -> Result<Graph> {
        if clique < 2 || clique.saturating_add(pendants) > MAX_VERTICES {
            return Err(Error::OutOfRange(format!(
                "pineapple needs clique >= 2 and clique + pendants <= {MAX_VERTICES}"
            )));
        }
        let n = clique + pendants;
        let mut g = Graph::empty(n)?;
        for u in 0..clique {
            for v in u + 1..clique {
                g.insert(u, v);
            }
        }
        for leaf in clique..n {
            g.insert(0, leaf);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = low_bits(n) & !bit(v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::OutOfRange(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// `K_{1,leaves}` with the center at index 0.
    pub fn star(leaves: usize) -> Result<Graph> {
        if leaves < 1 || leaves >= MAX_VERTICES {
            return Err(Error::OutOfRange(format!(
                "star needs 1..={} leaves, got {leaves}",
                MAX_VERTICES - 1
            )));
        }
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.rows() == other.rows()
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows().hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
