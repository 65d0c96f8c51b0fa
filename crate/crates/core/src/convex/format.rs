//! Text and JSON encodings of [`ConvexGraph`].
//!
//! Text: a header line `n <n> sides=<0|1>` followed by one `i j` pair per
//! line (0-based, `i < j`, lexicographic order when written).
//!
//! JSON: `{"n":5,"allow_sides":false,"edges":[[0,2],[0,3]]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ConvexGraph;
use crate::error::{Error, Result};

/// Serde mirror of the JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub allow_sides: bool,
    pub edges: Vec<[usize; 2]>,
}

impl From<&ConvexGraph> for GraphJson {
    fn from(g: &ConvexGraph) -> Self {
        GraphJson {
            n: g.n(),
            allow_sides: g.allow_sides(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for ConvexGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        ConvexGraph::new(j.n, j.allow_sides, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl ConvexGraph {
    pub fn to_text(&self) -> String {
        let mut out = format!("n {} sides={}\n", self.n(), u8::from(self.allow_sides()));
        for e in self.edges() {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("n") {
            return Err(parse_err(hline + 1, "header must start with `n`"));
        }
        let n: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| parse_err(hline + 1, "missing vertex count"))?;
        let allow_sides = match words.next() {
            Some("sides=0") => false,
            Some("sides=1") => true,
            other => return Err(parse_err(hline + 1, format!("expected sides=0|1, got {other:?}"))),
        };
        if words.next().is_some() {
            return Err(parse_err(hline + 1, "trailing tokens in header"));
        }

        let mut edges = Vec::new();
        for (idx, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse().map_err(|_| parse_err(idx + 1, format!("not a vertex index: {w}"))))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [i, j] if i < j => edges.push((*i, *j)),
                [_, _] => return Err(parse_err(idx + 1, "edge pairs must satisfy i < j")),
                _ => return Err(parse_err(idx + 1, "expected two vertex indices")),
            }
        }
        ConvexGraph::new(n, allow_sides, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text)?;
        ConvexGraph::try_from(j)
    }
}
