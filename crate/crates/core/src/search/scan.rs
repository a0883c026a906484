use std::io::BufRead;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, low_bits, Bits, Graph};
use crate::graph6;

pub const MIN_SCAN_ORDER: usize = 3;
pub const MAX_SCAN_ORDER: usize = 8;

const CHUNK_BITS: usize = 16;

/// A reduction over graphs. `merge` must be associative and commutative:
/// partitions are folded independently and combined in no fixed order.
pub trait GraphFold: Sync {
    type Acc: Send;

    fn empty(&self) -> Self::Acc;
    fn visit(&self, acc: &mut Self::Acc, g: &Graph);
    fn merge(&self, a: Self::Acc, b: Self::Acc) -> Self::Acc;
}

/// Counts the graphs it is fed.
pub struct CountFold;

impl GraphFold for CountFold {
    type Acc = u64;

    fn empty(&self) -> u64 {
        0
    }

    fn visit(&self, acc: &mut u64, _g: &Graph) {
        *acc += 1;
    }

    fn merge(&self, a: u64, b: u64) -> u64 {
        a + b
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    /// Edge masks examined.
    pub masks: u64,
    /// Connected graphs handed to the fold.
    pub connected: u64,
}

impl ScanStats {
    fn merge(self, other: ScanStats) -> ScanStats {
        ScanStats {
            masks: self.masks + other.masks,
            connected: self.connected + other.connected,
        }
    }
}

pub(crate) fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(0) => Err(Error::OutOfRange("thread count must be at least 1".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::OutOfRange(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Vertex pairs of the upper triangle in column-major order, so bit `e` of
/// an edge mask matches bit `e` of the graph6 body.
struct PairTable {
    n: usize,
    ends: Vec<(usize, usize)>,
    incident: Vec<u64>,
}

impl PairTable {
    fn new(n: usize) -> Self {
        let mut ends = Vec::new();
        for v in 1..n {
            for u in 0..v {
                ends.push((u, v));
            }
        }
        let mut incident = vec![0u64; n];
        for (e, &(u, v)) in ends.iter().enumerate() {
            incident[u] |= bit(e);
            incident[v] |= bit(e);
        }
        PairTable { n, ends, incident }
    }

    /// Adjacency rows of a connected mask, or `None`.
    #[inline]
    fn connected_rows(&self, mask: u64, rows: &mut [u64]) -> Option<()> {
        if self.incident.iter().any(|&inc| inc & mask == 0) {
            return None;
        }
        rows.fill(0);
        for e in Bits(mask) {
            let (u, v) = self.ends[e];
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        }
        let full = low_bits(self.n);
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= rows[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        (seen == full).then_some(())
    }
}

/// Feed every connected labeled graph on `n` vertices to `fold`.
///
/// Edge sets are enumerated as bitmasks over the `n(n-1)/2` vertex pairs and
/// split into contiguous chunks that are folded independently. The principal
/// ratio does not depend on labels, so no isomorphism reduction is done.
pub fn scan_labeled<F: GraphFold>(n: usize, fold: &F, threads: Option<usize>) -> Result<(F::Acc, ScanStats)> {
    if !(MIN_SCAN_ORDER..=MAX_SCAN_ORDER).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "labeled scan supports {MIN_SCAN_ORDER} <= n <= {MAX_SCAN_ORDER}, got {n}"
        )));
    }
    let table = PairTable::new(n);
    let pairs = table.ends.len();
    let chunk_bits = CHUNK_BITS.min(pairs);
    let chunks = 1u64 << (pairs - chunk_bits);

    with_threads(threads, || {
        (0..chunks)
            .into_par_iter()
            .fold(
                || (fold.empty(), ScanStats::default()),
                |(mut acc, mut stats), chunk| {
                    let start = chunk << chunk_bits;
                    let end = start + (1u64 << chunk_bits);
                    let mut rows = [0u64; MAX_SCAN_ORDER];
                    let mut g = Graph::empty(n).expect("scan order is in range");
                    for mask in start..end {
                        if table.connected_rows(mask, &mut rows[..n]).is_some() {
                            g.set_rows_unchecked(&rows[..n]);
                            fold.visit(&mut acc, &g);
                            stats.connected += 1;
                        }
                    }
                    stats.masks += end - start;
                    (acc, stats)
                },
            )
            .reduce(
                || (fold.empty(), ScanStats::default()),
                |(a, sa), (b, sb)| (fold.merge(a, b), sa.merge(sb)),
            )
    })
}

/// A problem found on one input line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct IngestStats {
    /// Non-blank lines read.
    pub lines: u64,
    /// Connected graphs handed to the fold.
    pub consumed: u64,
    /// Lines that failed to decode or held a disconnected graph.
    pub diagnostics: Vec<Diagnostic>,
}

/// Feed every connected graph of a graph6 stream (one per line) to `fold`.
/// Malformed or disconnected lines are reported and skipped.
pub fn ingest_graph6<R: BufRead, F: GraphFold>(
    reader: R,
    fold: &F,
    threads: Option<usize>,
) -> Result<(F::Acc, IngestStats)> {
    let mut stats = IngestStats::default();
    let mut graphs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim_end_matches('\r');
        if text.trim().is_empty() {
            continue;
        }
        stats.lines += 1;
        match graph6::decode(text) {
            Ok(g) => match g.separated_pair() {
                None => graphs.push(g),
                Some((u, v)) => stats.diagnostics.push(Diagnostic {
                    line: i + 1,
                    message: format!("graph is disconnected: no path between vertices {u} and {v}"),
                }),
            },
            Err(e) => stats.diagnostics.push(Diagnostic {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    stats.consumed = graphs.len() as u64;
    let acc = with_threads(threads, || {
        graphs
            .par_iter()
            .fold(
                || fold.empty(),
                |mut acc, g| {
                    fold.visit(&mut acc, g);
                    acc
                },
            )
            .reduce(|| fold.empty(), |a, b| fold.merge(a, b))
    })?;
    Ok((acc, stats))
}
