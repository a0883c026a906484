//! Graph arguments: a family spec (`kite:2,3`), an edge-list or graph6 file,
//! or a graph6 string, tried in that order.

use std::fs;
use std::path::Path;

use principal_ratio::{edgelist, graph6, FamilySpec, Graph};

use crate::CliError;

const FAMILIES: [&str; 6] = ["kite", "pineapple", "path", "complete", "cycle", "star"];

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("n"))
}

fn from_graph6_text(text: &str, origin: &str) -> Result<Graph, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = lines
        .next()
        .ok_or_else(|| CliError::Input(format!("{origin}: no graph found")))?;
    if lines.next().is_some() {
        return Err(CliError::Input(format!("{origin}: expected a single graph6 line")));
    }
    graph6::decode(first).map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

pub fn load(arg: &str) -> Result<Graph, CliError> {
    if let Some((name, _)) = arg.split_once(':') {
        if FAMILIES.contains(&name.trim()) {
            let spec: FamilySpec = arg.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            return spec.build().map_err(|e| CliError::Input(format!("{arg}: {e}")));
        }
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return if looks_like_edge_list(&text) {
            edgelist::parse(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
        } else {
            from_graph6_text(&text, arg)
        };
    }
    graph6::decode(arg).map_err(|e| {
        CliError::Input(format!(
            "{arg:?} is not a family spec, a readable file or a graph6 string ({e})"
        ))
    })
}
