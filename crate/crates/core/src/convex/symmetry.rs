use super::{ConvexGraph, Edge};

/// An element of the dihedral group of the `n`-gon: optional reflection
/// `v ↦ −v`, then rotation by `rotation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dihedral {
    pub rotation: usize,
    pub reflect: bool,
}

impl Dihedral {
    pub fn apply(self, n: usize, v: usize) -> usize {
        let base = if self.reflect { (n - v) % n } else { v };
        (base + self.rotation) % n
    }

    pub fn apply_edge(self, n: usize, e: Edge) -> Edge {
        Edge::new(self.apply(n, e.u), self.apply(n, e.v))
    }

    /// All `2n` group elements.
    pub fn all(n: usize) -> impl Iterator<Item = Dihedral> {
        [false, true]
            .into_iter()
            .flat_map(move |reflect| (0..n).map(move |rotation| Dihedral { rotation, reflect }))
    }
}

/// The image of `graph` under `d`.
pub fn dihedral_image(graph: &ConvexGraph, d: Dihedral) -> ConvexGraph {
    let n = graph.n();
    let edges = graph.edges().iter().map(|&e| d.apply_edge(n, e)).collect();
    ConvexGraph::from_valid(n, graph.allow_sides(), edges)
}

impl ConvexGraph {
    /// Lexicographically smallest sorted edge list over the dihedral orbit.
    pub fn canonical_form(&self) -> ConvexGraph {
        Dihedral::all(self.n())
            .map(|d| dihedral_image(self, d))
            .min_by(|a, b| a.edges().cmp(b.edges()))
            .expect("dihedral group is nonempty")
    }

    /// True when the two graphs differ by a rotation or reflection.
    pub fn is_dihedral_equivalent(&self, other: &ConvexGraph) -> bool {
        self.n() == other.n()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }
}
