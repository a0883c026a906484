use std::process::{Command, Output};

use serde_json::Value;

fn pratio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pratio")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = pratio(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

/// Header and first data row of a csv run, zipped.
fn csv_row(args: &[&str]) -> Vec<(String, String)> {
    let mut all = vec!["--format", "csv"];
    all.extend_from_slice(args);
    let out = pratio(&all);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    let row = rdr.records().next().unwrap().unwrap();
    headers.into_iter().zip(row.iter().map(String::from)).collect()
}

const PAW_LAMBDA: f64 = 2.1700864866260337;

#[test]
fn ratio_of_families() {
    let paw = json(&["ratio", "kite:2,3"]);
    assert!((paw["gamma"].as_f64().unwrap() - PAW_LAMBDA).abs() < 1e-10);
    let k6 = json(&["ratio", "complete:6"]);
    assert_eq!(k6["gamma"].as_f64().unwrap(), 1.0);
    assert_eq!(k6["epsilon"].as_f64().unwrap(), 0.0);
    let star = json(&["ratio", "--input", "star:9"]);
    assert!((star["gamma"].as_f64().unwrap() - 3.0).abs() < 1e-10);
    assert_eq!(star["max_vertex"], 0);
}

#[test]
fn ratio_from_files_and_strings() {
    let dir = std::env::temp_dir().join(format!("pratio-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let edges = dir.join("paw.txt");
    std::fs::write(&edges, "# paw\nn 4\n0 1\n1 2\n1 3\n2 3\n").unwrap();
    let g6 = dir.join("k4.g6");
    std::fs::write(&g6, "C~\n").unwrap();
    let a = json(&["ratio", edges.to_str().unwrap()]);
    assert!((a["gamma"].as_f64().unwrap() - PAW_LAMBDA).abs() < 1e-10);
    assert_eq!(json(&["ratio", g6.to_str().unwrap()])["gamma"].as_f64().unwrap(), 1.0);
    assert_eq!(json(&["ratio", "Bw"])["n"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let j = json(&["ratio", "kite:4,5"]);
    for (key, text) in csv_row(&["ratio", "kite:4,5"]) {
        if let Some(x) = j[&key].as_f64() {
            if text.contains('e') {
                let y: f64 = text.parse().unwrap();
                assert_eq!(x.to_bits(), y.to_bits(), "{key}");
            }
        }
    }
}

#[test]
fn disconnected_input_names_a_pair() {
    let out = pratio(&["ratio", "CC"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("disconnected") && err.contains("vertices 0 and"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["ratio", "--tol", "0.1", "kite:2,3"][..],
        &["ratio", "--tol", "0", "kite:2,3"],
        &["search", "--n", "5", "--threads", "0"],
        &["search", "--n", "9"],
        &["verify", "lemma99"],
        &["perturb", "kite:6,4", "--edge", "a-b"],
        &["kiteopt", "--n", "4"],
        &["ratio", "not-a-graph"],
        &["bogus"],
    ] {
        assert_eq!(pratio(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn search_reports() {
    let r = json(&["search", "--n", "5"]);
    assert_eq!(r["graphs_scanned"], 728);
    assert_eq!(r["kite"], "P_3·K_3");
    assert_eq!(r["k"], 3);
    let r = json(&["search", "--n", "6", "--threads", "2"]);
    assert_eq!(r["graphs_scanned"], 26704);
    let plain = stdout(&pratio(&["search", "--n", "4"]));
    assert!(plain.contains("wall_time_s"));
}

#[test]
fn search_over_the_class_catalogue() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/connected7.g6");
    let from_file = json(&["search", "--input", path]);
    let labeled = json(&["search", "--n", "7"]);
    assert_eq!(from_file["graphs_scanned"], 853);
    assert_eq!(from_file["witness"], labeled["witness"]);
    assert_eq!(from_file["log_gamma"], labeled["log_gamma"]);
}

#[test]
fn thread_count_does_not_change_the_report() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_s");
        v
    };
    let a = strip(json(&["search", "--n", "6", "--threads", "1"]));
    let b = strip(json(&["search", "--n", "6", "--threads", "3"]));
    assert_eq!(a, b);
}

#[test]
fn kiteopt_rows_and_table() {
    let r = json(&["kiteopt", "--n", "5"]);
    assert_eq!((r["r"].as_u64(), r["s"].as_u64()), (Some(3), Some(3)));
    let rows = json(&["kiteopt", "--n", "100,200,500,1000"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let ratio = row["ratio"].as_f64().unwrap();
        assert!(ratio.is_finite() && ratio > 0.0);
    }
    let table = std::env::temp_dir().join(format!("pratio-table-{}.csv", std::process::id()));
    let out = pratio(&["--format", "csv", "kiteopt", "--n", "20", "--table", table.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 1 + 17);
    std::fs::remove_file(&table).unwrap();
}

#[test]
fn verify_suites() {
    let out = pratio(&["--format", "csv", "verify", "lemma2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(",pass,"));
    let out = pratio(&["--format", "csv", "verify", "sigma-series"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    assert_eq!(pratio(&["verify", "lemma7"]).status.code(), Some(0));
    assert_eq!(pratio(&["verify", "lemma1", "--max-order", "5"]).status.code(), Some(0));
}

#[test]
fn perturb_reports() {
    // x_{k-1} of P_6·K_4 is vertex 4; 7 is a clique vertex
    let add = json(&["perturb", "kite:6,4", "--edge", "4,7", "--tracked", "4"]);
    assert!(add["delta1"].as_f64().unwrap() > 0.0);
    assert!(add["increase_condition"].is_boolean() && add["observed_increase"].is_boolean());
    // the default tracked vertex is the same one
    assert_eq!(json(&["perturb", "kite:6,4", "--edge", "4,7"])["tracked"], 4);

    let removed = json(&["perturb", "kite:3,5", "--edge", "3,4", "--remove"]);
    assert_eq!(removed["removed"], true);
    assert!(removed["delta1"].as_f64().unwrap() < 0.0);
    // removing the bridge disconnects the graph
    assert_eq!(pratio(&["perturb", "kite:3,5", "--edge", "0,1", "--remove"]).status.code(), Some(2));
    assert_eq!(pratio(&["perturb", "kite:3,5", "--edge", "0,1"]).status.code(), Some(2));
}

#[test]
fn perturb_round_trip() {
    let add = json(&["perturb", "kite:3,5", "--edge", "0,4"]);
    // P_3·K_5 with the extra edge 0-4, as an edge list
    let mut text = String::from("n 7\n0 1\n1 2\n0 4\n");
    for v in 2..7 {
        for u in 2..v {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    let path = std::env::temp_dir().join(format!("pratio-rt-{}.txt", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let del = json(&["perturb", path.to_str().unwrap(), "--edge", "0,4", "--remove"]);
    std::fs::remove_file(&path).unwrap();
    let before = add["log_gamma_before"].as_f64().unwrap();
    let after = del["log_gamma_after"].as_f64().unwrap();
    assert!((before - after).abs() < 2e-8);
}
