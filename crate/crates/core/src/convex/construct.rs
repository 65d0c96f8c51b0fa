//! Named convex graphs: complete graphs, `D_{n',i}`, parallel compositions
//! and the forest-crossing-graph extremal family.

use super::{ConvexGraph, Edge};
use crate::error::{invalid, Result};

/// `G_n` when `include_sides`, otherwise `D_n` (all diagonals).
pub fn complete_convex(n: usize, include_sides: bool) -> ConvexGraph {
    assert!(n >= 3, "complete_convex needs n >= 3");
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let e = Edge::new(u, v);
            if include_sides || !e.is_side(n) {
                edges.push(e);
            }
        }
    }
    ConvexGraph::from_valid(n, include_sides, edges)
}

/// Largest legal `i` for [`reduced_complete`]: `max(0, ⌊(n'-4)/2⌋)`.
pub fn reduced_complete_max_i(nprime: usize) -> usize {
    nprime.saturating_sub(4) / 2
}

/// The indicator `δ` in `e(D_{n',i}) = C(n',2) - n' - i - δ`.
pub fn reduced_complete_delta(nprime: usize, i: usize) -> usize {
    let small = if nprime % 2 == 0 { 4 * i <= nprime } else { i == 0 };
    usize::from(!small)
}

/// The set `E_{n',i}` of main diagonals removed from `D_{n'}`.
///
/// Odd `n'` removes `i + 1` near-diameters starting at even vertices; even
/// `n'` removes diameters from even vertices first and, once those run out
/// (`4i > n'`), continues with diameters from odd vertices.
pub fn main_diagonals_removed(nprime: usize, i: usize) -> Result<Vec<Edge>> {
    if nprime < 4 {
        return Err(invalid(format!("D_{{n',i}} needs n' >= 4, got {nprime}")));
    }
    let max_i = reduced_complete_max_i(nprime);
    if i > max_i {
        return Err(invalid(format!("i = {i} out of range 0..={max_i} for n' = {nprime}")));
    }
    let chord = |a: usize, len: usize| Edge::new(a % nprime, (a + len) % nprime);
    let mut out = Vec::new();
    if i == 0 {
        return Ok(out);
    }
    if nprime % 2 == 1 {
        let len = (nprime - 1) / 2;
        out.extend((0..=i).map(|t| chord(2 * t, len)));
    } else {
        let len = nprime / 2;
        if 4 * i <= nprime {
            out.extend((0..i).map(|t| chord(2 * t, len)));
        } else {
            let quarter = nprime / 4;
            out.extend((0..quarter).map(|t| chord(2 * t, len)));
            out.extend((0..=i - quarter).map(|t| chord(2 * t + 1, len)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `D_{n',i}`: `D_{n'}` minus the main diagonals `E_{n',i}`.
pub fn reduced_complete(nprime: usize, i: usize) -> Result<ConvexGraph> {
    let removed = main_diagonals_removed(nprime, i)?;
    let full = complete_convex(nprime, false);
    let edges = full.edges().iter().copied().filter(|e| removed.binary_search(e).is_err()).collect();
    Ok(ConvexGraph::from_valid(nprime, false, edges))
}

/// An ordered chain of convex graphs to be glued along merged sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSpec {
    pub parts: Vec<ConvexGraph>,
}

impl CompositionSpec {
    pub fn new(parts: Vec<ConvexGraph>) -> Self {
        CompositionSpec { parts }
    }

    /// `q` copies of `h` followed by an optional remainder.
    pub fn repeated(h: &ConvexGraph, q: usize, remainder: Option<ConvexGraph>) -> Self {
        let mut parts = vec![h.clone(); q];
        parts.extend(remainder);
        CompositionSpec { parts }
    }

    /// `Σ nᵢ − 2(#parts − 1)`.
    pub fn result_n(&self) -> usize {
        let total: usize = self.parts.iter().map(ConvexGraph::n).sum();
        total - 2 * self.parts.len().saturating_sub(1)
    }

    /// `Σ e(partᵢ) + (#parts − 1)`.
    pub fn expected_edges(&self) -> usize {
        let total: usize = self.parts.iter().map(ConvexGraph::edge_count).sum();
        total + self.parts.len().saturating_sub(1)
    }
}

/// Parallel composition `P₁ ⊘ P₂ ⊘ … ⊘ P_q`.
///
/// Part 1 occupies vertices `0..n₁`. Each later part is glued onto the
/// current outer side `{0, last}`, which becomes an edge of the result, and
/// its remaining vertices are appended after `last`. All parts therefore
/// fan around vertex 0 and occupy pairwise interior-disjoint regions.
pub fn parallel_compose(spec: &CompositionSpec) -> Result<ConvexGraph> {
    let Some(first) = spec.parts.first() else {
        return Err(invalid("parallel composition needs at least one part"));
    };
    for (idx, part) in spec.parts.iter().enumerate() {
        if part.allow_sides() {
            return Err(invalid(format!("part {idx} allows sides; parts must be subgraphs of D_n")));
        }
        if part.n() < 3 {
            return Err(invalid(format!("part {idx} has fewer than 3 vertices")));
        }
    }

    let mut edges: Vec<Edge> = first.edges().to_vec();
    let mut last = first.n() - 1;
    for part in &spec.parts[1..] {
        edges.push(Edge::new(0, last));
        let np = part.n();
        let map = |j: usize| if j == np - 1 { 0 } else { last + j };
        edges.extend(part.edges().iter().map(|e| Edge::new(map(e.u), map(e.v))));
        last += np - 2;
    }
    let n = last + 1;
    debug_assert_eq!(n, spec.result_n());
    Ok(ConvexGraph::from_valid(n, false, edges))
}

/// The graph with edges `v₁vᵢ` and `v_{i−1}v_{i+1}` for `3 ≤ i ≤ n−1`
/// (1-based), i.e. `{0, i−1}` and `{i−2, i}` 0-based: `2n − 6` edges whose
/// crossing graph is a forest.
pub fn forest_construction(n: usize) -> Result<ConvexGraph> {
    if n < 4 {
        return Err(invalid(format!("the forest construction needs n >= 4, got {n}")));
    }
    let mut edges = Vec::with_capacity(2 * n - 6);
    for i in 3..n {
        edges.push(Edge::new(0, i - 1));
        edges.push(Edge::new(i - 2, i));
    }
    Ok(ConvexGraph::from_valid(n, false, edges))
}
