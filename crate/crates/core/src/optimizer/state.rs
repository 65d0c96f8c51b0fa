use std::sync::Arc;

use crate::convex::Edge;
use crate::error::{invalid, Result};
use crate::zk::BookDrawing;

/// Crossing pairs of `K_n` in the circular model, by edge index.
#[derive(Debug)]
pub struct CrossTable {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub crossers: Vec<Vec<u32>>,
}

impl CrossTable {
    pub fn new(n: usize) -> Arc<Self> {
        let edges: Vec<Edge> = BookDrawing::all_edges(n).collect();
        let crossers = edges
            .iter()
            .map(|&e| edges.iter().enumerate().filter(|(_, &f)| e.crosses(f)).map(|(j, _)| j as u32).collect())
            .collect();
        Arc::new(CrossTable { n, edges, crossers })
    }
}

/// A drawing plus, for every edge `e` and page `p`, how many edges on `p`
/// cross `e`. Moving one edge costs `O(crossers of e)`.
#[derive(Debug, Clone)]
pub struct AnnealState {
    cross: Arc<CrossTable>,
    k: usize,
    page: Vec<u16>,
    /// `table[e * k + p]`.
    table: Vec<u32>,
    total: u64,
}

impl AnnealState {
    pub fn new(d: &BookDrawing) -> Self {
        Self::with_table(CrossTable::new(d.n()), d)
    }

    pub fn with_table(cross: Arc<CrossTable>, d: &BookDrawing) -> Self {
        assert_eq!(cross.n, d.n());
        let k = d.k();
        let page = d.page_assignment().to_vec();
        let mut table = vec![0u32; page.len() * k];
        for (e, list) in cross.crossers.iter().enumerate() {
            for &f in list {
                table[e * k + page[f as usize] as usize] += 1;
            }
        }
        let total = (0..page.len()).map(|e| table[e * k + page[e] as usize] as u64).sum::<u64>() / 2;
        AnnealState { cross, k, page, table, total }
    }

    pub fn n(&self) -> usize {
        self.cross.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.page.len()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn page_of(&self, e: usize) -> usize {
        self.page[e] as usize
    }

    /// Crossings on page `p` that edge `e` would take part in.
    pub fn crossings_on(&self, e: usize, p: usize) -> u32 {
        self.table[e * self.k + p]
    }

    /// Change in the total if `e` moved to page `to`.
    pub fn delta(&self, e: usize, to: usize) -> i64 {
        let from = self.page[e] as usize;
        self.table[e * self.k + to] as i64 - self.table[e * self.k + from] as i64
    }

    pub fn apply(&mut self, e: usize, to: usize) {
        let from = self.page[e] as usize;
        if from == to {
            return;
        }
        let d = self.delta(e, to);
        let k = self.k;
        for &f in &self.cross.crossers[e] {
            let f = f as usize;
            self.table[f * k + from] -= 1;
            self.table[f * k + to] += 1;
        }
        self.page[e] = to as u16;
        self.total = (self.total as i64 + d) as u64;
    }

    pub fn drawing(&self) -> BookDrawing {
        BookDrawing::from_pages(self.n(), self.k, self.page.clone()).expect("state holds a valid drawing")
    }

    /// Rebuilds the table from the page assignment and compares.
    pub fn check_consistency(&self) -> Result<()> {
        let fresh = Self::with_table(self.cross.clone(), &self.drawing());
        if fresh.table != self.table || fresh.total != self.total {
            return Err(invalid(format!("cached total {} disagrees with recount {}", self.total, fresh.total)));
        }
        Ok(())
    }
}

/// Monochromatic crossings counted straight from the definition: every
/// `a < b < c < d` contributes one crossing of `ac` and `bd`.
pub fn recount(d: &BookDrawing) -> u64 {
    let n = d.n();
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let pac = d.page(Edge::new(a, c));
                for dd in c + 1..n {
                    if pac == d.page(Edge::new(b, dd)) {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}
