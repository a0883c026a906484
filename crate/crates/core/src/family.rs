//! Compact names for the graph families: `kite:r,s`, `pineapple:c,p`,
//! `path:n`, `complete:n`, `cycle:n`, `star:m`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, KiteParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Kite(KiteParams),
    Pineapple { clique: usize, pendants: usize },
    Path(usize),
    Complete(usize),
    Cycle(usize),
    Star(usize),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Kite(p) => Graph::kite(p),
            FamilySpec::Pineapple { clique, pendants } => Graph::pineapple(clique, pendants),
            FamilySpec::Path(n) => Graph::path(n),
            FamilySpec::Complete(n) => Graph::complete(n),
            FamilySpec::Cycle(n) => Graph::cycle(n),
            FamilySpec::Star(m) => Graph::star(m),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let fail = |message: &str| Error::FamilySpec {
            spec: spec.to_string(),
            message: message.to_string(),
        };
        let (name, args) = spec
            .split_once(':')
            .ok_or_else(|| fail("expected <family>:<arguments>"))?;
        let args = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| fail("arguments must be non-negative integers"))?;
        let one = || match args[..] {
            [a] => Ok(a),
            _ => Err(fail("expected exactly one argument")),
        };
        let two = || match args[..] {
            [a, b] => Ok((a, b)),
            _ => Err(fail("expected exactly two arguments")),
        };
        Ok(match name.trim() {
            "kite" => {
                let (r, s) = two()?;
                FamilySpec::Kite(KiteParams::new(r, s))
            }
            "pineapple" => {
                let (clique, pendants) = two()?;
                FamilySpec::Pineapple { clique, pendants }
            }
            "path" => FamilySpec::Path(one()?),
            "complete" => FamilySpec::Complete(one()?),
            "cycle" => FamilySpec::Cycle(one()?),
            "star" => FamilySpec::Star(one()?),
            _ => return Err(fail("unknown family")),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Kite(p) => write!(f, "kite:{},{}", p.r, p.s),
            FamilySpec::Pineapple { clique, pendants } => write!(f, "pineapple:{clique},{pendants}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Star(m) => write!(f, "star:{m}"),
        }
    }
}
