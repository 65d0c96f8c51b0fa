//! Block constructions on the matchings `g_m = {{i, j} : i + j ≡ m (mod n)}`.
//!
//! The `n` matchings partition the edges of `K_n`. A block construction
//! tiles `g_0, g_1, …, g_{n−1}` into `k` runs of consecutive matchings, `r`
//! runs of length `q + 1` and `k − r` of length `q`, and puts run `c` on
//! page `c`.

use super::drawing::BookDrawing;
use super::ZkParams;
use crate::convex::Edge;
use crate::error::{invalid, Result};

/// The matching `g_m` of `G_n`, lexicographically sorted.
pub fn matching_class(n: usize, m: usize) -> Result<Vec<Edge>> {
    if m >= n {
        return Err(invalid(format!("class index {m} out of range for n = {n}")));
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (u + v) % n == m {
                out.push(Edge::new(u, v));
            }
        }
    }
    Ok(out)
}

fn class_of(n: usize, e: Edge) -> usize {
    (e.u + e.v) % n
}

fn from_block_sizes(n: usize, k: usize, sizes: &[usize]) -> Result<BookDrawing> {
    // page of each class, then of each edge
    let mut class_page = Vec::with_capacity(n);
    for (page, &len) in sizes.iter().enumerate() {
        class_page.extend(std::iter::repeat(page as u16).take(len));
    }
    debug_assert_eq!(class_page.len(), n);
    let page_of = BookDrawing::all_edges(n).map(|e| class_page[class_of(n, e)]).collect();
    BookDrawing::from_pages(n, k, page_of)
}

fn standard_sizes(p: &ZkParams) -> Vec<usize> {
    let mut sizes = vec![p.q + 1; p.r];
    sizes.extend(std::iter::repeat(p.q).take(p.k - p.r));
    sizes
}

/// The construction with the `r` long runs first: page `c < r` gets
/// `g_{c(q+1)}, …, g_{c(q+1)+q}` and page `c ≥ r` gets the `q` classes
/// starting at `r(q+1) + (c − r)q`.
pub fn dps_construction(n: usize, k: usize) -> Result<BookDrawing> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let p = ZkParams::new(n, k)?;
    from_block_sizes(n, k, &standard_sizes(&p))
}

/// Any arrangement of the run lengths; `order[c]` is the length of page `c`'s run.
pub fn block_permutation_variant(n: usize, k: usize, order: &[usize]) -> Result<BookDrawing> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let p = ZkParams::new(n, k)?;
    let mut expected = standard_sizes(&p);
    let mut given = order.to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if given != expected {
        return Err(invalid(format!(
            "block sizes {order:?} are not a rearrangement of {} blocks of {} and {} blocks of {}",
            p.r,
            p.q + 1,
            p.k - p.r,
            p.q
        )));
    }
    from_block_sizes(n, k, order)
}

/// One run of consecutive matchings on a single page.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub page: usize,
    pub start: usize,
    pub len: usize,
}

/// The recovered run structure of a block construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub params: ZkParams,
    /// Nonempty runs in class order.
    pub blocks: Vec<Block>,
}

/// Recovers the runs of a block construction, or errors if `d` is not one.
pub fn block_structure(d: &BookDrawing) -> Result<BlockStructure> {
    let (n, k) = (d.n(), d.k());
    let params = ZkParams::new(n, k)?;
    let mut class_page = vec![usize::MAX; n];
    for e in BookDrawing::all_edges(n) {
        let c = class_of(n, e);
        let p = d.page(e);
        if class_page[c] == usize::MAX {
            class_page[c] = p;
        } else if class_page[c] != p {
            return Err(invalid(format!("matching g_{c} is split across pages")));
        }
    }

    let mut blocks: Vec<Block> = Vec::new();
    for (c, &page) in class_page.iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if b.page == page => b.len += 1,
            _ => {
                if blocks.iter().any(|b| b.page == page) {
                    return Err(invalid(format!("page {page} holds non-consecutive matchings")));
                }
                blocks.push(Block { page, start: c, len: 1 });
            }
        }
    }

    let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len).collect();
    sizes.extend(std::iter::repeat(0).take(k - blocks.len()));
    let mut expected = standard_sizes(&params);
    sizes.sort_unstable();
    expected.sort_unstable();
    if sizes != expected {
        return Err(invalid("run lengths do not match the q / q+1 pattern"));
    }
    Ok(BlockStructure { params, blocks })
}

/// Moves `subset ⊆ g_boundary` to the neighbouring page, where `g_boundary`
/// is the end of a `(q+1)`-run that touches a `q`-run.
pub fn boundary_move_variant(base: &BookDrawing, boundary: usize, subset: &[Edge]) -> Result<BookDrawing> {
    let structure = block_structure(base)?;
    let q = structure.params.q;
    if q == 0 {
        return Err(invalid("boundary moves need q >= 1"));
    }
    let blocks = &structure.blocks;
    let idx = blocks
        .iter()
        .position(|b| b.start <= boundary && boundary < b.start + b.len)
        .ok_or_else(|| invalid(format!("class {boundary} out of range")))?;
    let block = blocks[idx];
    if block.len != q + 1 {
        return Err(invalid(format!("class {boundary} is not in a run of length q + 1 = {}", q + 1)));
    }
    let target = if boundary == block.start + block.len - 1
        && blocks.get(idx + 1).is_some_and(|b| b.len == q)
    {
        blocks[idx + 1].page
    } else if boundary == block.start && idx > 0 && blocks[idx - 1].len == q {
        blocks[idx - 1].page
    } else {
        return Err(invalid(format!("class {boundary} does not border a run of length q = {q}")));
    };

    let n = base.n();
    let mut out = base.clone();
    for &e in subset {
        if e.v >= n || class_of(n, e) != boundary {
            return Err(invalid(format!("edge {e} is not in matching g_{boundary}")));
        }
        out.set_page(e, target);
    }
    Ok(out)
}
