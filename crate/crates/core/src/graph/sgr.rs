//! The `.sgr` text format.
//!
//! ```text
//! # comment lines start with '#'
//! 4
//! 0 1
//! 1 2
//! ```
//!
//! The first non-comment line holds the order `n`; every following line is
//! one arc `u v` (tail, head), 0-indexed. Blank lines are ignored. The writer
//! emits the order followed by the arcs in sorted order, so writing a parsed
//! file reproduces any file the writer produced.

use std::fmt::Write as _;

use super::OrientedGraph;
use crate::error::{Error, Result};

pub fn parse_sgr(text: &str) -> Result<OrientedGraph> {
    let mut order: Option<usize> = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("`{s}` is not a vertex index")))
        };
        match order {
            None => {
                if fields.len() != 1 {
                    return Err(err("expected the vertex count".into()));
                }
                order = Some(parse(fields[0])?);
            }
            Some(_) => {
                if fields.len() != 2 {
                    return Err(err(format!("expected `u v`, found `{line}`")));
                }
                arcs.push((parse(fields[0])?, parse(fields[1])?));
            }
        }
    }
    let n = order.ok_or(Error::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })?;
    OrientedGraph::new(n, arcs)
}

pub fn to_sgr(g: &OrientedGraph) -> String {
    let mut s = String::with_capacity(8 + 6 * g.size());
    writeln!(s, "{}", g.order()).unwrap();
    for &(u, v) in g.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

impl OrientedGraph {
    pub fn to_sgr(&self) -> String {
        to_sgr(self)
    }
}

/// Graphs embedded in JSON reports are written as their `.sgr` text.
impl serde::Serialize for OrientedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_sgr(self))
    }
}

impl std::str::FromStr for OrientedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sgr(s)
    }
}
