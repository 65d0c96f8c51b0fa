//! Convex-position graphs and the crossing calculus on them.
//!
//! Vertices `0..n` sit on a circle in clockwise order and edges are straight
//! chords. Two chords cross exactly when their endpoints alternate around
//! the circle, so everything here is pure combinatorics on vertex indices.

mod construct;
mod crossing_graph;
mod format;
mod symmetry;

pub use construct::{
    complete_convex, forest_construction, main_diagonals_removed, parallel_compose,
    reduced_complete, reduced_complete_delta, reduced_complete_max_i, CompositionSpec,
};
pub use crossing_graph::CrossingGraph;
pub use format::GraphJson;
pub use symmetry::{dihedral_image, Dihedral};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered vertex pair stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}` in canonical orientation. `a` and `b` must differ.
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    /// Circular length: the number of polygon sides on the shorter arc.
    pub fn length(self, n: usize) -> usize {
        let d = self.v - self.u;
        d.min(n - d)
    }

    /// True when the pair is a side of the `n`-gon.
    pub fn is_side(self, n: usize) -> bool {
        self.length(n) == 1
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }

    /// Interleaving test; assumes both edges are valid for the same `n`.
    #[inline]
    pub fn crosses(self, other: Edge) -> bool {
        if self.shares_endpoint(other) {
            return false;
        }
        let inside = |x: usize| self.u < x && x < self.v;
        inside(other.u) != inside(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

fn check_edge(n: usize, a: usize, b: usize) -> Result<Edge> {
    for vertex in [a, b] {
        if vertex >= n {
            return Err(Error::InvalidVertex { vertex, n });
        }
    }
    if a == b {
        return Err(Error::LoopEdge(a, b));
    }
    Ok(Edge::new(a, b))
}

/// Whether chords `e1` and `e2` of the convex `n`-gon cross.
///
/// Edges sharing an endpoint never cross; sides cross nothing.
pub fn edges_cross(n: usize, e1: (usize, usize), e2: (usize, usize)) -> Result<bool> {
    let e1 = check_edge(n, e1.0, e1.1)?;
    let e2 = check_edge(n, e2.0, e2.1)?;
    Ok(e1.crosses(e2))
}

/// A graph on `n` vertices in convex position.
///
/// Edges are kept sorted and deduplicated, so equality and hashing are
/// structural. With `allow_sides == false` the graph is a subgraph of `D_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexGraph {
    n: usize,
    allow_sides: bool,
    edges: Vec<Edge>,
}

impl ConvexGraph {
    /// Validates and canonicalizes an edge list.
    pub fn new<I, E>(n: usize, allow_sides: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        if n < 3 {
            return Err(crate::error::invalid(format!("a convex graph needs n >= 3, got {n}")));
        }
        let mut out = Vec::new();
        for e in edges {
            let (a, b) = e.into();
            let edge = check_edge(n, a, b)?;
            if !allow_sides && edge.is_side(n) {
                return Err(Error::SideNotAllowed(edge.u, edge.v));
            }
            out.push(edge);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(ConvexGraph { n, allow_sides, edges: out })
    }

    /// Builds from edges already known to be valid. Duplicates are removed.
    pub(crate) fn from_valid(n: usize, allow_sides: bool, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| e.v < n && (allow_sides || !e.is_side(n))));
        ConvexGraph { n, allow_sides, edges }
    }

    /// The empty graph on `n` vertices.
    pub fn empty(n: usize, allow_sides: bool) -> Result<Self> {
        Self::new(n, allow_sides, std::iter::empty::<(usize, usize)>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn allow_sides(&self) -> bool {
        self.allow_sides
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// `cr(G)`: number of unordered crossing edge pairs.
    pub fn crossing_count(&self) -> u64 {
        let mut total = 0u64;
        for (i, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[i + 1..] {
                if a.crosses(b) {
                    total += 1;
                }
            }
        }
        total
    }

    /// For each edge (in [`edges`](Self::edges) order), how many edges cross it.
    pub fn per_edge_crossings(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.edges.len()];
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if self.edges[i].crosses(self.edges[j]) {
                    counts[i] += 1;
                    counts[j] += 1;
                }
            }
        }
        counts
    }

    /// `lc(G)`: the largest number of crossings on a single edge.
    pub fn local_crossing_number(&self) -> usize {
        self.per_edge_crossings().into_iter().max().unwrap_or(0)
    }

    /// Edges that no other edge crosses and that are not polygon sides.
    pub fn crossing_free_diagonals(&self) -> Vec<Edge> {
        let counts = self.per_edge_crossings();
        self.edges
            .iter()
            .zip(counts)
            .filter(|(e, c)| *c == 0 && !e.is_side(self.n))
            .map(|(e, _)| *e)
            .collect()
    }

    /// `G^⊗`, with nodes indexed in lexicographic edge order.
    pub fn crossing_graph(&self) -> CrossingGraph {
        CrossingGraph::of(self)
    }

    /// True when the crossing graph is a forest.
    pub fn has_acyclic_crossing_graph(&self) -> bool {
        self.crossing_graph().is_forest()
    }

    /// A copy with `edge` added; errors on invalid or duplicate edges.
    pub fn with_edge(&self, a: usize, b: usize) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        edges.push((a, b));
        Self::new(self.n, self.allow_sides, edges)
    }

    /// Same edges, with sides permitted.
    pub fn into_allow_sides(mut self) -> Self {
        self.allow_sides = true;
        self
    }

    /// Points on the unit circle for vertex `i`, clockwise from the top.
    pub fn vertex_coordinates(&self) -> Vec<(f64, f64)> {
        (0..self.n)
            .map(|i| {
                let angle = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
                (angle.cos(), angle.sin())
            })
            .collect()
    }
}

impl fmt::Display for ConvexGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
