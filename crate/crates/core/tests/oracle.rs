mod common;

use std::io::Empty;

use common::{connected_graphs, dense_perron};
use principal_ratio::closed_form::kite_gamma;
use principal_ratio::irregularity::report_all;
use principal_ratio::search::{find_extremal, scan_labeled, structure_check, CountFold, SearchOptions, Source};
use principal_ratio::spectral::principal_eigenpair;
use principal_ratio::{Graph, KiteParams};

const TOL: f64 = 1e-12;

#[test]
fn power_iteration_matches_jacobi_on_small_graphs() {
    for n in 1..=6 {
        let graphs = if n < 3 {
            vec![Graph::complete(n).unwrap()]
        } else {
            connected_graphs(n)
        };
        for g in &graphs {
            let spec = principal_eigenpair(g, TOL).unwrap();
            let (lambda, gamma) = dense_perron(g);
            assert!((spec.lambda1 - lambda).abs() < 1e-9, "{g:?}");
            assert!((spec.gamma - gamma).abs() < 1e-9 * gamma, "{g:?}");
        }
    }
}

#[test]
fn independent_enumeration_agrees_with_scanner() {
    for n in 3..=5 {
        let (count, _) = scan_labeled(n, &CountFold, None).unwrap();
        assert_eq!(count, connected_graphs(n).len() as u64);
    }
}

#[test]
fn zero_measures_exactly_on_regular_graphs() {
    for n in 3..=6 {
        for g in connected_graphs(n) {
            let report = report_all(&g, TOL).unwrap();
            let regular = g.is_regular();
            assert_eq!((report.gamma - 1.0).abs() < 1e-9, regular);
            assert_eq!(report.epsilon.abs() < 1e-9, regular);
            assert_eq!(report.variance.abs() < 1e-9, regular);
            assert_eq!(report.albertson == 0, regular);
            assert_eq!(report.s_measure == 0.0, regular);
        }
    }
}

#[test]
fn paw_ratio_from_dense_solver() {
    let paw = Graph::kite(KiteParams::new(2, 3)).unwrap();
    let (lambda, gamma) = dense_perron(&paw);
    assert!((lambda - 2.1700864866260337).abs() < 1e-12);
    assert!((gamma - lambda).abs() < 1e-12);
    let p33 = Graph::kite(KiteParams::new(3, 3)).unwrap();
    let (lambda, gamma) = dense_perron(&p33);
    assert!((gamma - (lambda * lambda - 1.0)).abs() < 1e-10);
}

#[test]
fn extremal_winners_dominate_kites() {
    for n in 4..=7 {
        let result = find_extremal::<Empty>(Source::Labeled(n), &SearchOptions::default()).unwrap();
        for r in 1..n {
            let kite = Graph::kite(KiteParams::new(r, n + 1 - r)).unwrap();
            let lg = principal_eigenpair(&kite, TOL).unwrap().log_gamma();
            assert!(result.log_gamma.exp() >= lg.exp() - 1e-10, "n={n} r={r}");
        }
        let (_, dense_gamma) = dense_perron(&result.best);
        assert!((result.log_gamma.exp() - dense_gamma).abs() < 1e-9 * dense_gamma);
        let p = result.kite.expect("small winners are kites");
        assert!((result.log_gamma - kite_gamma(p.r, p.s, TOL).unwrap()).abs() < 1e-8);
        if n >= 6 && result.audit.k >= 2 {
            assert!(result.audit.lambda_gt_nk, "n={n}");
        }
    }
}

#[test]
fn neighbourhood_sums_on_kites() {
    for r in 2..=6 {
        for s in 3..=10 {
            let g = Graph::kite(KiteParams::new(r, s)).unwrap();
            let spec = principal_eigenpair(&g, TOL).unwrap();
            let report = structure_check(&g, &spec, 0).unwrap();
            assert!(report.nbhd_exhaustive);
            assert!(report.nbhd_sum_ok && report.nbhd_min_margin > -1e-9, "r={r} s={s}");
        }
    }
}
