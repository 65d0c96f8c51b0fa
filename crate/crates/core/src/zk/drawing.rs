use serde::{Deserialize, Serialize};

use crate::convex::{ConvexGraph, Edge};
use crate::error::{invalid, Result};

/// A `k`-page book drawing of `K_n` in the circular model: every one of the
/// `C(n, 2)` vertex pairs (sides included) is assigned a page.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BookDrawing {
    n: usize,
    k: usize,
    /// Page of each pair, indexed by [`BookDrawing::edge_index`].
    page_of: Vec<u16>,
}

/// JSON encoding: `{"n":..,"k":..,"pages":[[[i,j],...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub n: usize,
    pub k: usize,
    pub pages: Vec<Vec<[usize; 2]>>,
}

impl BookDrawing {
    /// Builds a drawing from a page assignment in [`edge_index`](Self::edge_index) order.
    pub fn from_pages(n: usize, k: usize, page_of: Vec<u16>) -> Result<Self> {
        if n < 3 || k == 0 || k > u16::MAX as usize {
            return Err(invalid(format!("need n >= 3 and 1 <= k <= 65535, got n = {n}, k = {k}")));
        }
        if page_of.len() != n * (n - 1) / 2 {
            return Err(invalid(format!(
                "expected {} page assignments, got {}",
                n * (n - 1) / 2,
                page_of.len()
            )));
        }
        if let Some(p) = page_of.iter().find(|&&p| p as usize >= k) {
            return Err(invalid(format!("page {p} out of range for k = {k}")));
        }
        Ok(BookDrawing { n, k, page_of })
    }

    /// Everything on page 0.
    pub fn single_page(n: usize, k: usize) -> Result<Self> {
        Self::from_pages(n, k, vec![0; n.saturating_sub(1) * n / 2])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.page_of.len()
    }

    /// Position of `{u, v}` in the lexicographic list of all pairs.
    pub fn edge_index(n: usize, e: Edge) -> usize {
        e.u * (2 * n - e.u - 1) / 2 + (e.v - e.u - 1)
    }

    /// All pairs of `K_n` in lexicographic order.
    pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge::new(u, v)))
    }

    pub fn page(&self, e: Edge) -> usize {
        self.page_of[Self::edge_index(self.n, e)] as usize
    }

    pub fn page_assignment(&self) -> &[u16] {
        &self.page_of
    }

    pub fn set_page(&mut self, e: Edge, page: usize) {
        assert!(page < self.k, "page {page} out of range");
        let idx = Self::edge_index(self.n, e);
        self.page_of[idx] = page as u16;
    }

    /// Edge lists per page, each lexicographically sorted.
    pub fn pages(&self) -> Vec<Vec<Edge>> {
        let mut pages = vec![Vec::new(); self.k];
        for (e, &p) in Self::all_edges(self.n).zip(&self.page_of) {
            pages[p as usize].push(e);
        }
        pages
    }

    /// The convex graph formed by one page (sides allowed).
    pub fn page_graph(&self, page: usize) -> ConvexGraph {
        let edges = Self::all_edges(self.n)
            .zip(&self.page_of)
            .filter(|(_, &p)| p as usize == page)
            .map(|(e, _)| e)
            .collect();
        ConvexGraph::from_valid(self.n, true, edges)
    }

    pub fn to_json_value(&self) -> DrawingJson {
        DrawingJson {
            n: self.n,
            k: self.k,
            pages: self.pages().into_iter().map(|p| p.into_iter().map(|e| [e.u, e.v]).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("drawing JSON is always serializable")
    }

    pub fn from_json_value(j: &DrawingJson) -> Result<Self> {
        if j.pages.len() != j.k {
            return Err(invalid(format!("k = {} but {} pages listed", j.k, j.pages.len())));
        }
        if j.n < 3 {
            return Err(invalid(format!("need n >= 3, got {}", j.n)));
        }
        let mut page_of = vec![u16::MAX; j.n * (j.n - 1) / 2];
        for (p, edges) in j.pages.iter().enumerate() {
            for &[a, b] in edges {
                if a >= j.n || b >= j.n || a == b {
                    return Err(invalid(format!("invalid pair [{a}, {b}] for n = {}", j.n)));
                }
                let idx = Self::edge_index(j.n, Edge::new(a, b));
                if page_of[idx] != u16::MAX {
                    return Err(invalid(format!("pair [{a}, {b}] assigned twice")));
                }
                page_of[idx] = p as u16;
            }
        }
        if let Some(idx) = page_of.iter().position(|&p| p == u16::MAX) {
            let e = Self::all_edges(j.n).nth(idx).expect("index in range");
            return Err(invalid(format!("pair {e} is not assigned to any page")));
        }
        Self::from_pages(j.n, j.k, page_of)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: DrawingJson = serde_json::from_str(text)?;
        Self::from_json_value(&j)
    }

    /// Same drawing with pages renumbered so they first appear in increasing
    /// order along the edge list. Two drawings that differ only by page
    /// labels normalize to the same value.
    pub fn normalize_page_labels(&self) -> BookDrawing {
        let mut relabel = vec![u16::MAX; self.k];
        let mut next = 0u16;
        let page_of = self
            .page_of
            .iter()
            .map(|&p| {
                if relabel[p as usize] == u16::MAX {
                    relabel[p as usize] = next;
                    next += 1;
                }
                relabel[p as usize]
            })
            .collect();
        BookDrawing { n: self.n, k: self.k, page_of }
    }
}

/// Total monochromatic crossings: the sum over pages of the page graph's
/// crossing count. Sides never contribute.
pub fn count_monochromatic_crossings(d: &BookDrawing) -> u64 {
    (0..d.k()).map(|p| d.page_graph(p).crossing_count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_is_lexicographic_position() {
        for n in 3..12 {
            for (pos, e) in BookDrawing::all_edges(n).enumerate() {
                assert_eq!(BookDrawing::edge_index(n, e), pos);
            }
        }
    }

    #[test]
    fn one_page_counts_all_quadruples() {
        let d = BookDrawing::single_page(5, 1).unwrap();
        assert_eq!(count_monochromatic_crossings(&d), 5);
        let d = BookDrawing::single_page(9, 3).unwrap();
        assert_eq!(count_monochromatic_crossings(&d), 126);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let mut d = BookDrawing::single_page(6, 2).unwrap();
        d.set_page(Edge::new(0, 3), 1);
        let text = d.to_json();
        assert_eq!(BookDrawing::from_json(&text).unwrap(), d);
        assert!(BookDrawing::from_json(r#"{"n":4,"k":1,"pages":[[[0,1]]]}"#).is_err());
        assert!(BookDrawing::from_json(r#"{"n":3,"k":2,"pages":[[[0,1],[0,2],[1,2]]]}"#).is_err());
        assert!(BookDrawing::from_json(r#"{"n":3,"k":1,"pages":[[[0,1],[1,0],[1,2]]]}"#).is_err());
        assert!(BookDrawing::from_json(r#"{"n":3,"k":1,"pages":[[[0,1],[0,2],[1,2]]]}"#).is_ok());
    }

    #[test]
    fn invariants_enforced() {
        assert!(BookDrawing::from_pages(4, 2, vec![0; 5]).is_err());
        assert!(BookDrawing::from_pages(4, 2, vec![0, 0, 0, 0, 0, 2]).is_err());
        assert!(BookDrawing::from_pages(4, 0, vec![0; 6]).is_err());
    }
}
