use serde::Serialize;

use crate::closed_form::{kite_lambda, pendant_path_gamma};
use crate::error::{Error, Result};
use crate::graph::KiteParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KiteRow {
    pub s: usize,
    pub r: usize,
    pub lambda1: f64,
    pub log_gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KiteOptimum {
    pub n: usize,
    pub best: KiteParams,
    pub log_gamma: f64,
    /// `s* ln n / n`; tends to 1 if the clique takes `n / ln n` vertices.
    pub ratio: f64,
    /// One row per clique size `s = 3..=n-1`.
    pub table: Vec<KiteRow>,
}

/// Best split of `n` vertices into a pendant path and a clique, by `ln γ`.
/// Equal values go to the smaller clique.
pub fn kite_optimize(n: usize, tol: f64) -> Result<KiteOptimum> {
    if n < 5 {
        return Err(Error::OutOfRange(format!("kite optimizer needs n >= 5, got {n}")));
    }
    let table = (3..n)
        .map(|s| {
            let r = n + 1 - s;
            let lambda1 = kite_lambda(KiteParams::new(r, s), tol)?;
            Ok(KiteRow {
                s,
                r,
                lambda1,
                log_gamma: pendant_path_gamma(r, lambda1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = table
        .iter()
        .fold(table[0], |best, row| if row.log_gamma > best.log_gamma { *row } else { best });
    Ok(KiteOptimum {
        n,
        best: KiteParams::new(best.r, best.s),
        log_gamma: best.log_gamma,
        ratio: best.s as f64 * (n as f64).ln() / n as f64,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_vertices() {
        let opt = kite_optimize(5, 1e-12).unwrap();
        assert_eq!(opt.table.len(), 2);
        assert_eq!(opt.best, KiteParams::new(3, 3));
        // dense eigensolves of P_2·K_4 and P_3·K_3 in numpy
        assert!((opt.table[1].log_gamma - 1.126917942827899).abs() < 1e-10);
        assert!((opt.log_gamma - 1.3617997849338515).abs() < 1e-10);
        assert!((opt.table[1].lambda1 - 3.0861301976514941).abs() < 1e-11);
    }

    #[test]
    fn table_shape() {
        for n in [6, 20, 64, 65, 150] {
            let opt = kite_optimize(n, 1e-12).unwrap();
            assert_eq!(opt.table.len(), n - 3);
            assert!(opt.table.iter().all(|row| row.r + row.s - 1 == n));
            assert!(opt.log_gamma.is_finite() && opt.ratio > 0.0);
        }
        assert!(kite_optimize(4, 1e-12).is_err());
    }

    #[test]
    fn agrees_with_exhaustive_winners() {
        assert_eq!(kite_optimize(6, 1e-12).unwrap().best, KiteParams::new(3, 4));
        assert_eq!(kite_optimize(7, 1e-12).unwrap().best, KiteParams::new(4, 4));
    }
}
