use crate::graph::{Graph, KiteParams};

/// Recognise `P_r · K_s`. Complete graphs are reported as `(1, n)` and paths
/// on `n ≥ 3` vertices as `(n - 1, 2)`.
///
/// The degree profile locates the pendant end and walks the degree-2 chain
/// to the attachment vertex; the remaining vertices must then form a clique
/// and the edge count must leave no room for anything else.
pub fn is_kite(g: &Graph) -> Option<KiteParams> {
    let n = g.n();
    let m = g.edge_count();
    if n >= 2 && m == n * (n - 1) / 2 {
        return Some(KiteParams::new(1, n));
    }
    if !g.is_connected() {
        return None;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() == 2 && m == n - 1 && (0..n).all(|v| g.degree(v) <= 2) {
        return Some(KiteParams::new(n - 1, 2));
    }
    let &[pendant] = leaves.as_slice() else {
        return None;
    };

    let mut on_path = 1u64 << pendant;
    let mut prev = pendant;
    let mut cur = g.neighbors(pendant).next()?;
    let mut r = 2;
    while g.degree(cur) == 2 {
        let next = g.neighbors(cur).find(|&w| w != prev)?;
        on_path |= 1 << cur;
        prev = cur;
        cur = next;
        r += 1;
        if r > n {
            return None;
        }
    }
    let attachment = cur;
    let s = n + 1 - r;
    if s < 3 || g.degree(attachment) != s || m != (r - 1) + s * (s - 1) / 2 {
        return None;
    }
    let clique: Vec<usize> = (0..n).filter(|&v| on_path & (1 << v) == 0).collect();
    for (i, &u) in clique.iter().enumerate() {
        if clique[i + 1..].iter().any(|&w| !g.has_edge(u, w)) {
            return None;
        }
    }
    Some(KiteParams::new(r, s))
}
