//! Simulated annealing over `k`-page drawings of `K_n`, aiming at `Z_k(n)`.
//!
//! Each restart draws a uniformly random drawing and applies single-edge
//! page changes under Metropolis acceptance with geometric cooling. When the
//! best value stalls, the temperature is raised again. Restarts run in
//! parallel, each with its own ChaCha stream selected by restart index.

mod state;

pub use state::{recount, AnnealState, CrossTable};

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::BoundReport;
use crate::error::{invalid, Result};
use crate::zk::{zk_value, BookDrawing};

/// Cooling parameters for one restart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    /// Proposed moves per restart.
    pub iterations: u64,
    pub t_start: f64,
    pub t_end: f64,
    /// Reheat after this many proposals without a new best.
    pub reheat_after: u64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { iterations: 3_000_000, t_start: 3.0, t_end: 0.05, reheat_after: 300_000 }
    }
}

impl Schedule {
    /// No moves at all.
    pub fn identity() -> Self {
        Schedule { iterations: 0, ..Self::default() }
    }
}

/// A drawing that beats `Z_k(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureAlert {
    pub n: usize,
    pub k: usize,
    pub count: u64,
    pub zk: u64,
    pub drawing: BookDrawing,
}

impl ConjectureAlert {
    /// Writes `alert_n{n}_k{k}_c{count}.json` into `dir` and returns its path.
    pub fn persist(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("alert_n{}_k{}_c{}.json", self.n, self.k, self.count));
        let body = serde_json::json!({
            "n": self.n,
            "k": self.k,
            "count": self.count,
            "zk": self.zk,
            "drawing": self.drawing.to_json_value(),
        });
        std::fs::write(&path, serde_json::to_string_pretty(&body)? + "\n")?;
        Ok(path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnealResult {
    pub drawing: BookDrawing,
    pub count: u64,
    /// Best proven lower bound from the counting argument.
    pub lower_bound: u64,
    pub zk: u64,
    /// Some restart stopped early because it met the lower bound.
    pub hit_lower_bound: bool,
    pub alert: Option<ConjectureAlert>,
}

struct RunOutcome {
    best: BookDrawing,
    count: u64,
}

fn run_one(state: &mut AnnealState, rng: &mut ChaCha8Rng, schedule: &Schedule, floor: u64) -> RunOutcome {
    let mut best_count = state.total();
    let mut best = state.drawing();
    let edges = state.edge_count();
    let k = state.k();
    if schedule.iterations == 0 || k < 2 || best_count <= floor {
        return RunOutcome { best, count: best_count };
    }
    let ratio = (schedule.t_end / schedule.t_start).ln();
    let mut phase_start = 0u64;
    let mut last_improvement = 0u64;
    for it in 0..schedule.iterations {
        let frac = (it - phase_start) as f64 / (schedule.iterations - phase_start).max(1) as f64;
        let temp = schedule.t_start * (ratio * frac).exp();

        let e = rng.gen_range(0..edges);
        let from = state.page_of(e);
        let mut to = rng.gen_range(0..k - 1);
        if to >= from {
            to += 1;
        }
        let delta = state.delta(e, to);
        if delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp() {
            state.apply(e, to);
            if state.total() < best_count {
                best_count = state.total();
                best = state.drawing();
                last_improvement = it;
                if best_count <= floor {
                    break;
                }
            }
        }
        if it - last_improvement > schedule.reheat_after && it - phase_start > schedule.reheat_after {
            phase_start = it;
            last_improvement = it;
        }
    }
    RunOutcome { best, count: best_count }
}

fn restart_rng(seed: u64, restart: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    rng
}

/// Best of `restarts` independent annealing runs from random drawings.
/// Deterministic in `(n, k, restarts, seed, schedule)`.
pub fn anneal(n: usize, k: usize, restarts: u64, seed: u64, schedule: &Schedule) -> Result<AnnealResult> {
    if n < 3 || k == 0 {
        return Err(invalid(format!("need n >= 3 and k >= 1, got n = {n}, k = {k}")));
    }
    if restarts == 0 {
        return Err(invalid("need at least one restart"));
    }
    let lower_bound = BoundReport::new(k, n)?.best_bound;
    let cross = CrossTable::new(n);
    let edges = n * (n - 1) / 2;
    let runs: Vec<RunOutcome> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(seed, r);
            let pages = (0..edges).map(|_| rng.gen_range(0..k) as u16).collect();
            let start = BookDrawing::from_pages(n, k, pages).expect("random pages are in range");
            let mut state = AnnealState::with_table(Arc::clone(&cross), &start);
            run_one(&mut state, &mut rng, schedule, lower_bound)
        })
        .collect();
    Ok(finish(n, k, lower_bound, runs))
}

fn finish(n: usize, k: usize, lower_bound: u64, runs: Vec<RunOutcome>) -> AnnealResult {
    let best = runs
        .into_iter()
        .map(|r| (r.count, r.best.to_json(), r.best))
        .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
        .expect("at least one restart");
    let (count, _, drawing) = best;
    assert!(
        count >= lower_bound,
        "annealing found {count} crossings for n = {n}, k = {k}, below the proven bound {lower_bound}"
    );
    let zk = zk_value(n, k);
    let alert = (count < zk).then(|| ConjectureAlert { n, k, count, zk, drawing: drawing.clone() });
    AnnealResult { drawing, count, lower_bound, zk, hit_lower_bound: count <= lower_bound, alert }
}

/// Anneals starting from `d`; never returns a worse drawing than `d`.
pub fn improve_from(d: &BookDrawing, seed: u64, schedule: &Schedule) -> BookDrawing {
    let mut rng = restart_rng(seed, 0);
    let mut state = AnnealState::new(d);
    let floor = BoundReport::new(d.k(), d.n()).map(|r| r.best_bound).unwrap_or(0);
    run_one(&mut state, &mut rng, schedule, floor).best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zk::{count_monochromatic_crossings, dps_construction};

    fn quick() -> Schedule {
        Schedule { iterations: 200_000, ..Schedule::default() }
    }

    #[test]
    fn small_optima() {
        assert_eq!(anneal(7, 3, 4, 1, &quick()).unwrap().count, 2);
        assert_eq!(anneal(6, 2, 4, 1, &quick()).unwrap().count, 3);
        assert_eq!(anneal(8, 4, 2, 1, &quick()).unwrap().count, 0);
    }

    #[test]
    fn deterministic_by_seed() {
        let a = anneal(9, 3, 3, 42, &quick()).unwrap();
        let b = anneal(9, 3, 3, 42, &quick()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn improve_never_worsens() {
        let base = dps_construction(14, 4).unwrap();
        let out = improve_from(&base, 5, &Schedule { iterations: 50_000, t_start: 0.5, ..Schedule::default() });
        assert!(count_monochromatic_crossings(&out) <= 53);
        assert_eq!(improve_from(&base, 5, &Schedule::identity()), base);
    }

    #[test]
    fn improve_from_one_page() {
        let one = BookDrawing::single_page(6, 2).unwrap();
        let out = improve_from(&one, 3, &quick());
        assert_eq!(count_monochromatic_crossings(&out), 3);
    }

    #[test]
    fn alert_files() {
        let d = dps_construction(7, 3).unwrap();
        let alert = ConjectureAlert { n: 7, k: 3, count: 1, zk: 2, drawing: d };
        let dir = tempfile::tempdir().unwrap();
        let path = alert.persist(dir.path()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"zk\": 2"));
    }

    #[test]
    fn bad_input() {
        assert!(anneal(2, 3, 1, 0, &quick()).is_err());
        assert!(anneal(7, 0, 1, 0, &quick()).is_err());
        assert!(anneal(7, 3, 0, 0, &quick()).is_err());
    }
}

