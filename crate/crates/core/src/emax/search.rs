//! Branch-and-bound over subsets of the diagonals of a convex `n`-gon.
//!
//! Diagonals are indexed by (length, u, v), so a subset fits in a `u64` for
//! `n ≤ 12`. The root is split by the shortest length present: a nonempty
//! graph whose shortest diagonal has length `L` can be rotated so that it
//! contains `{0, L}`, so each subproblem forces that edge and forbids every
//! shorter one. Subproblems are split a few levels further and searched
//! independently, each with the same starting threshold, so the outcome does
//! not depend on scheduling.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::compose::generic_composition;
use super::{EdgeMaxRecord, Method, Status};
use crate::convex::{complete_convex, forest_construction, ConvexGraph, Edge};
use crate::error::{invalid, Result};

/// Largest `n` the bitmask search handles.
pub const EXACT_MAX_N: usize = 12;

/// Stop after this many search nodes (summed over workers).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 20_000_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Every chosen edge is crossed at most this many times.
    Local(u32),
    /// The crossing graph of the chosen edges is a forest.
    Forest,
}

struct Problem {
    n: usize,
    edges: Vec<Edge>,
    cross: Vec<u64>,
    rule: Rule,
}

impl Problem {
    fn new(n: usize, rule: Rule) -> Self {
        let mut edges = complete_convex(n, false).edges().to_vec();
        edges.sort_by_key(|e| (e.length(n), e.u, e.v));
        assert!(edges.len() <= 64);
        let cross = edges
            .iter()
            .map(|&e| edges.iter().enumerate().filter(|(_, &f)| e.crosses(f)).fold(0u64, |m, (j, _)| m | 1 << j))
            .collect();
        Problem { n, edges, cross, rule }
    }

    fn graph(&self, set: u64) -> ConvexGraph {
        let edges = bits(set).map(|i| self.edges[i]).collect();
        ConvexGraph::from_valid(self.n, false, edges)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Clone)]
struct Node {
    chosen: u64,
    /// Undecided edges not yet ruled out.
    avail: u64,
    cur: u32,
    /// Local rule: crossings on each chosen edge. Forest rule: component id.
    tag: [u8; 64],
}

impl Node {
    /// Adds edge `e`, assuming it is admissible.
    fn include(&self, p: &Problem, e: usize) -> Node {
        let mut next = self.clone();
        let crossers = p.cross[e] & self.chosen;
        next.chosen |= 1 << e;
        next.avail &= !(1 << e);
        next.cur += 1;
        match p.rule {
            Rule::Local(_) => {
                for f in bits(crossers) {
                    next.tag[f] += 1;
                }
                next.tag[e] = crossers.count_ones() as u8;
            }
            Rule::Forest => {
                let merged: u64 = bits(crossers).fold(0, |m, f| m | 1 << self.tag[f]);
                for f in bits(self.chosen) {
                    if merged >> self.tag[f] & 1 == 1 {
                        next.tag[f] = e as u8;
                    }
                }
                next.tag[e] = e as u8;
            }
        }
        next
    }

    fn admissible(&self, p: &Problem, e: usize) -> bool {
        let crossers = p.cross[e] & self.chosen;
        match p.rule {
            Rule::Local(ell) => {
                crossers.count_ones() <= ell && bits(crossers).all(|f| (self.tag[f] as u32) < ell)
            }
            Rule::Forest => {
                let mut seen = 0u64;
                for f in bits(crossers) {
                    let c = 1u64 << self.tag[f];
                    if seen & c != 0 {
                        return false;
                    }
                    seen |= c;
                }
                true
            }
        }
    }

    /// Drops edges that can never be added, then bounds how many of the
    /// remaining ones can be.
    fn tighten_and_bound(&mut self, p: &Problem) -> u32 {
        match p.rule {
            Rule::Local(ell) => {
                let mut blocked = 0u64;
                for f in bits(self.chosen) {
                    if self.tag[f] as u32 == ell {
                        blocked |= p.cross[f];
                    }
                }
                let mut u = self.avail & !blocked;
                for e in bits(u) {
                    if (p.cross[e] & self.chosen).count_ones() > ell {
                        u &= !(1 << e);
                    }
                }
                self.avail = u;
                // a chosen edge with r spare crossings admits at most r of its crossers
                let mut rest = u;
                let mut extra = 0;
                for f in bits(self.chosen) {
                    let r = ell - self.tag[f] as u32;
                    let s = rest & p.cross[f];
                    if s.count_ones() > r {
                        extra += r;
                        rest &= !s;
                    }
                }
                extra + rest.count_ones()
            }
            Rule::Forest => {
                let mut u = self.avail;
                for e in bits(u) {
                    if !self.admissible(p, e) {
                        u &= !(1 << e);
                    }
                }
                self.avail = u;
                u.count_ones()
            }
        }
    }
}

const FLUSH: u64 = 1 << 14;

struct Shared<'a> {
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
    limit: u64,
}

struct Worker<'a> {
    p: &'a Problem,
    shared: &'a Shared<'a>,
    local_nodes: u64,
    /// Values must exceed this to be recorded (raised in max mode).
    best: u32,
    best_set: Option<u64>,
    /// Enumeration mode: keep every set reaching `best + 1`, never raise `best`.
    collect: Option<Vec<u64>>,
}

impl Worker<'_> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes > self.shared.limit {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
        if self.local_nodes % FLUSH == 0 {
            let total = self.shared.nodes.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
            if total > self.shared.limit {
                self.shared.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    fn record(&mut self, node: &Node) {
        if node.cur > self.best {
            match &mut self.collect {
                Some(found) => found.push(node.chosen),
                None => {
                    self.best = node.cur;
                    self.best_set = Some(node.chosen);
                }
            }
        }
    }

    fn dfs(&mut self, mut node: Node) {
        if !self.tick() {
            return;
        }
        let bound = node.tighten_and_bound(self.p);
        if node.cur + bound <= self.best {
            return;
        }
        let Some(e) = bits(node.avail).next() else {
            return;
        };
        let with = node.include(self.p, e);
        self.record(&with);
        self.dfs(with);
        node.avail &= !(1 << e);
        self.dfs(node);
    }
}

/// Root subproblems, split `depth` decisions further.
fn tasks(p: &Problem, depth: usize) -> Vec<Node> {
    let n = p.n;
    let mut roots = Vec::new();
    for len in 2..=n / 2 {
        let first = p.edges.iter().position(|&e| e == Edge::new(0, len)).expect("edge exists");
        let longer = p.edges.iter().enumerate().filter(|(_, e)| e.length(n) >= len).fold(0u64, |m, (i, _)| m | 1 << i);
        let empty = Node { chosen: 0, avail: longer, cur: 0, tag: [0; 64] };
        roots.push(empty.include(p, first));
    }
    for _ in 0..depth {
        let mut next = Vec::with_capacity(roots.len() * 2);
        for node in roots {
            match bits(node.avail).next() {
                None => next.push(node),
                Some(e) => {
                    if node.admissible(p, e) {
                        next.push(node.include(p, e));
                    }
                    let mut without = node;
                    without.avail &= !(1 << e);
                    next.push(without);
                }
            }
        }
        roots = next;
    }
    roots
}

struct Outcome {
    value: u32,
    set: Option<u64>,
    collected: Vec<u64>,
    nodes: u64,
    aborted: bool,
}

/// Searches for sets larger than `floor`; in enumeration mode collects all
/// sets of size `floor + 1` or more instead of raising the threshold.
fn run(p: &Problem, floor: u32, enumerate: bool, budget: &SearchBudget) -> Outcome {
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let shared = Shared { nodes: &nodes, aborted: &aborted, limit: budget.max_nodes };
    let roots = tasks(p, 8);
    let results: Vec<(u32, Option<u64>, Vec<u64>, u64)> = roots
        .into_par_iter()
        .map(|root| {
            let mut w = Worker {
                p,
                shared: &shared,
                local_nodes: 0,
                best: floor,
                best_set: None,
                collect: enumerate.then(Vec::new),
            };
            w.record(&root);
            w.dfs(root);
            (w.best, w.best_set, w.collect.unwrap_or_default(), w.local_nodes)
        })
        .collect();

    let mut out = Outcome { value: floor, set: None, collected: Vec::new(), nodes: 0, aborted: aborted.load(Ordering::Relaxed) };
    let mut best_key: Option<Vec<Edge>> = None;
    for (value, set, collected, n) in results {
        out.nodes += n;
        out.collected.extend(collected);
        let Some(set) = set else { continue };
        let key = p.graph(set).canonical_form().edges().to_vec();
        if value > out.value || (value == out.value && best_key.as_ref().is_some_and(|k| key < *k)) {
            out.value = value;
            out.set = Some(set);
            best_key = Some(key);
        }
    }
    out
}

/// `e_ℓ(n)` by exhaustive search, with an optimal certificate.
///
/// Exact for `n ≤ 12` within the node budget; larger `n`, or a search that
/// runs out of budget, returns [`Status::Inexact`] with the best lower bound
/// known.
pub fn emax_exact(ell: usize, n: usize, budget: &SearchBudget) -> Result<EdgeMaxRecord> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let lower = generic_composition(ell, n)?;
    let record = |value: u64, cert: ConvexGraph, status, nodes| EdgeMaxRecord {
        ell,
        n,
        value,
        method: Method::ExactSearch,
        status,
        certificate: Some(cert),
        clamped: false,
        nodes,
    };
    if n > EXACT_MAX_N {
        return Ok(record(lower.value, lower.certificate.expect("composition has a certificate"), Status::Inexact, 0));
    }
    let full = complete_convex(n, false);
    if full.local_crossing_number() <= ell {
        return Ok(record(full.edge_count() as u64, full, Status::Exact, 0));
    }

    let p = Problem::new(n, Rule::Local(ell as u32));
    // search strictly above the construction's value
    let out = run(&p, lower.value as u32, false, budget);
    let status = if out.aborted { Status::Inexact } else { Status::Exact };
    Ok(match out.set {
        Some(set) => record(out.value as u64, p.graph(set).canonical_form(), status, out.nodes),
        None => {
            let cert = lower.certificate.expect("composition has a certificate").canonical_form();
            record(lower.value, cert, status, out.nodes)
        }
    })
}

/// All optimal graphs for `(ℓ, n)`, one canonical representative per
/// dihedral class, sorted. Errors if the search does not finish.
pub fn enumerate_optima(ell: usize, n: usize, budget: &SearchBudget) -> Result<(u64, Vec<ConvexGraph>)> {
    let best = emax_exact(ell, n, budget)?;
    if !best.is_exact() {
        return Err(invalid(format!("search for e_{ell}({n}) did not finish within budget")));
    }
    if best.value == 0 {
        return Ok((0, vec![ConvexGraph::empty(n, false)?]));
    }
    let p = Problem::new(n, Rule::Local(ell as u32));
    let out = run(&p, best.value as u32 - 1, true, budget);
    if out.aborted {
        return Err(invalid(format!("enumeration for e_{ell}({n}) did not finish within budget")));
    }
    let classes: BTreeSet<Vec<Edge>> = out
        .collected
        .into_iter()
        .map(|s| p.graph(s).canonical_form().edges().to_vec())
        .collect();
    let graphs = classes.into_iter().map(|edges| ConvexGraph::from_valid(n, false, edges)).collect();
    Ok((best.value, graphs))
}

/// `e*(n)`: the most diagonals whose crossing graph is a forest.
pub fn estar_acyclic(n: usize, budget: &SearchBudget) -> Result<EdgeMaxRecord> {
    if n < 4 {
        return Err(invalid(format!("need n >= 4, got {n}")));
    }
    let witness = forest_construction(n)?;
    let record = |value: u64, cert: ConvexGraph, status, nodes| EdgeMaxRecord {
        ell: 0,
        n,
        value,
        method: Method::AcyclicSearch,
        status,
        certificate: Some(cert),
        clamped: false,
        nodes,
    };
    if n > EXACT_MAX_N {
        return Ok(record(witness.edge_count() as u64, witness, Status::Inexact, 0));
    }
    let p = Problem::new(n, Rule::Forest);
    let floor = witness.edge_count() as u32;
    let out = run(&p, floor, false, budget);
    let status = if out.aborted { Status::Inexact } else { Status::Exact };
    Ok(match out.set {
        Some(set) => record(out.value as u64, p.graph(set).canonical_form(), status, out.nodes),
        None => record(floor as u64, witness.canonical_form(), status, out.nodes),
    })
}
