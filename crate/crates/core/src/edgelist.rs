//! Plain-text edge lists: a header line `n <count>` followed by one
//! `u v` pair per line, 0-indexed. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::EdgeList {
        line,
        message: message.into(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| err(line, format!("{token:?} is not a vertex index")))
}

pub fn parse(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n <count>` header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("n") {
        return Err(err(hline, "header must have the form `n <count>`"));
    }
    let n = match (tokens.next(), tokens.next()) {
        (Some(t), None) => parse_index(t, hline)?,
        _ => return Err(err(hline, "header must have the form `n <count>`")),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(err(hline, format!("vertex count {n} not in 1..={MAX_VERTICES}")));
    }

    let mut g = Graph::empty(n)?;
    for (line, body) in lines {
        let mut tokens = body.split_whitespace();
        let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (parse_index(a, line)?, parse_index(b, line)?),
            _ => return Err(err(line, "expected two vertex indices")),
        };
        g = match g.with_edge(u, v) {
            Ok(h) => h,
            Err(Error::EdgePresent(..)) => {
                return Err(err(line, format!("duplicate edge ({u}, {v})")))
            }
            Err(_) => return Err(err(line, format!("({u}, {v}) is not an edge of a simple graph on {n} vertices"))),
        };
    }
    Ok(g)
}

pub fn write(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
