use super::{ConvexGraph, Edge};

/// The crossing graph `G^⊗` of a convex graph.
///
/// Node `i` is the `i`-th edge of the source graph in lexicographic order;
/// two nodes are adjacent when their edges cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingGraph {
    nodes: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl CrossingGraph {
    pub(super) fn of(graph: &ConvexGraph) -> Self {
        let nodes = graph.edges().to_vec();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i].crosses(nodes[j]) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        CrossingGraph { nodes, adjacency }
    }

    pub fn nodes(&self) -> &[Edge] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Adjacent pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            out.extend(adj.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn adjacency_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, j) in self.pairs() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                return false;
            }
            parent[ri] = rj;
        }
        true
    }

    /// Length of a shortest cycle, if any (breadth-first from every node).
    pub fn girth(&self) -> Option<usize> {
        let n = self.nodes.len();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adjacency[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}
