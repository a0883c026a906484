#![allow(dead_code)]

use principal_ratio::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Eigenvalues (ascending) and eigenvectors (columns) of a symmetric matrix
/// by cyclic Jacobi rotations.
pub fn jacobi(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (values, vectors)
}

pub fn adjacency(g: &Graph) -> Vec<Vec<f64>> {
    (0..g.n())
        .map(|i| (0..g.n()).map(|j| g.has_edge(i, j) as u8 as f64).collect())
        .collect()
}

/// Largest eigenvalue and the principal ratio from the dense solver.
pub fn dense_perron(g: &Graph) -> (f64, f64) {
    let (values, vectors) = jacobi(adjacency(g));
    let top = vectors.last().unwrap();
    let max = top.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let min = top.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    (*values.last().unwrap(), max / min)
}

/// Every connected labeled graph on `n` vertices, enumerated without the
/// library's scanner.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(e, _)| mask >> e & 1 == 1).map(|(_, &p)| p);
            let g = Graph::from_edges(n, edges).unwrap();
            g.is_connected().then_some(g)
        })
        .collect()
}

/// A random spanning tree plus each remaining pair with probability `p`,
/// then randomly relabeled.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for v in 1..n {
        for u in 0..v {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, edges).unwrap();
    g.permute(&random_permutation(rng, n)).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
