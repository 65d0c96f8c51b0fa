//! Lower bounds on `ν_k(K_n)` from the counting inequality
//! `cr(H) ≥ m·e(H) − Σ_{ℓ<m} e_ℓ(n)` summed over the pages.
//!
//! Only `e_0, …, e_4` are known exactly, so every bound here uses `m ≤ 5`.

mod tables;

pub use tables::{emit_table, known_value_rows, comparison_rows, coefficient_rows, KnownValueRow, ComparisonRow, CoefficientRow, TableId};

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::convex::ConvexGraph;
use crate::emax::emax_closed_form;
use crate::error::{invalid, Error, Result};
use crate::rational::{binomial_rat, int, rat, ExactRational};

/// Largest `m` usable with known values of `e_ℓ(n)`.
pub const MAX_M: usize = 5;

fn e_ell(ell: usize, n: usize) -> u64 {
    if n < 4 {
        return 0;
    }
    emax_closed_form(ell, n).expect("closed form covers ell <= 4, n >= 4")
}

fn check_m(m: usize) -> Result<()> {
    if m > MAX_M {
        return Err(Error::Unsupported(format!("m = {m} needs e_ell for ell >= 5, which is unknown")));
    }
    Ok(())
}

fn sum_e(m: usize, n: usize) -> ExactRational {
    int((0..m).map(|l| e_ell(l, n) as i64).sum())
}

/// `m·e(H) − Σ_{ℓ<m} e_ℓ(n)`, a lower bound on `cr(H)` for `H ⊆ D_n`.
pub fn crossing_lower_per_graph(h: &ConvexGraph, m: usize) -> Result<ExactRational> {
    check_m(m)?;
    if h.allow_sides() {
        return Err(invalid("the counting inequality applies to subgraphs of D_n"));
    }
    Ok(int((m * h.edge_count()) as i64) - sum_e(m, h.n()))
}

/// `L_{k,n}(m) = (m/2)·n(n−3) − k·Σ_{ℓ<m} e_ℓ(n)`.
pub fn l_bound(k: usize, n: usize, m: usize) -> Result<ExactRational> {
    check_m(m)?;
    if k == 0 || n < 3 {
        return Err(invalid(format!("need k >= 1 and n >= 3, got k = {k}, n = {n}")));
    }
    let (k, nn) = (k as i64, n as i64);
    Ok(rat(m as i64 * nn * (nn - 3), 2) - int(k) * sum_e(m, n))
}

/// The `m ≤ 5` maximizing `L_{k,n}(m)`: the smallest `m` with
/// `e_m(n) ≥ n(n−3)/(2k)`. The flag is set when no `m ≤ 4` qualifies, in
/// which case a larger `m` might do better if `e_5(n)` were known.
pub fn best_m(k: usize, n: usize) -> Result<(usize, bool)> {
    if k == 0 || n < 3 {
        return Err(invalid(format!("need k >= 1 and n >= 3, got k = {k}, n = {n}")));
    }
    let threshold = rat((n * (n - 3)) as i64, 2 * k as i64);
    for m in 0..MAX_M {
        if int(e_ell(m, n) as i64) >= threshold {
            return Ok((m, false));
        }
    }
    Ok((MAX_M, true))
}

/// `β` in the branch boundary `⌊4.5k⌋ + β`.
pub fn piecewise_beta(k: usize, n: usize) -> i64 {
    if k % 2 == 0 && n % 4 == 0 {
        -1
    } else if k % 2 == 1 && n % 4 == 2 {
        1
    } else {
        0
    }
}

/// The piecewise lower bound, evaluated branch by branch as printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseBound {
    pub value: ExactRational,
    /// 1..=5, equal to the `m` of the branch; 0 when `n ≤ 2k`.
    pub branch: usize,
    pub beta: i64,
    pub vacuous: bool,
}

/// The five-branch bound for `k ≥ 3`; `n ≤ 2k` gives 0 with `vacuous` set.
pub fn piecewise_bound(k: usize, n: usize) -> Result<PiecewiseBound> {
    if k < 3 || n < 3 {
        return Err(invalid(format!("need k >= 3 and n >= 3, got k = {k}, n = {n}")));
    }
    let beta = piecewise_beta(k, n);
    if n <= 2 * k {
        return Ok(PiecewiseBound { value: int(0), branch: 0, beta, vacuous: true });
    }
    let (ki, ni) = (k as i64, n as i64);
    let split = (9 * ki) / 2 + beta;
    let branch = if ni <= 3 * ki {
        1
    } else if ni <= 4 * ki {
        2
    } else if ni <= split {
        3
    } else if ni <= 5 * ki {
        4
    } else {
        5
    };
    let delta_sum = |upto: usize| -> ExactRational {
        (1..=upto)
            .map(|l| crate::emax::ClosedForm::for_ell(l).expect("ell <= 4").delta_at(n).clone())
            .fold(int(0), |a, b| a + b)
    };
    let nm3 = int(ni - 3);
    let kk = int(ki);
    let nn = int(ni);
    let value = match branch {
        1 => rat((ni - 3) * (ni - 2 * ki), 2),
        2 => &nm3 * (&nn - rat(5 * ki, 2)) - &kk * delta_sum(1),
        3 => rat(3, 2) * &nm3 * (&nn - int(3 * ki)) - &kk * delta_sum(2),
        4 => int(2) * &nm3 * (&nn - rat(27 * ki, 8)) - &kk * delta_sum(3),
        _ => rat(5, 2) * &nm3 * (&nn - rat(37 * ki, 10)) - &kk * delta_sum(4),
    };
    Ok(PiecewiseBound { value, branch, beta, vacuous: false })
}

/// `ν_k(K_n) = (n−3)(n−2k)/2` for `2k < n ≤ 3k`.
pub fn exact_range_value(k: usize, n: usize) -> Result<u64> {
    if k == 0 || n <= 2 * k || n > 3 * k {
        return Err(invalid(format!("exact formula needs 2k < n <= 3k, got k = {k}, n = {n}")));
    }
    Ok(((n - 3) * (n - 2 * k) / 2) as u64)
}

/// `8000(4107k² − 5416k + 1309) / (37(111k−17)(111k−77)(37k−19)(3k−1))`.
pub fn asymptotic_formula(k: usize) -> Result<ExactRational> {
    if k < 3 {
        return Err(invalid(format!("need k >= 3, got {k}")));
    }
    let k = int(k as i64);
    let num = int(8000) * (int(4107) * &k * &k - int(5416) * &k + int(1309));
    let den = int(37)
        * (int(111) * &k - int(17))
        * (int(111) * &k - int(77))
        * (int(37) * &k - int(19))
        * (int(3) * &k - int(1));
    Ok(num / den)
}

/// `max_{1 ≤ m ≤ 5} L_{k,n'}(m) / C(n',4)` and the smallest maximizing `m`.
pub fn asymptotic_coefficient(k: usize, nprime: usize) -> Result<(ExactRational, usize)> {
    if k == 0 || nprime <= 2 * k {
        return Err(invalid(format!("need n' > 2k, got k = {k}, n' = {nprime}")));
    }
    let c = binomial_rat(nprime as u64, 4);
    let mut best: Option<(ExactRational, usize)> = None;
    for m in 1..=MAX_M {
        let v = l_bound(k, nprime, m)? / &c;
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, m));
        }
    }
    Ok(best.expect("m range is nonempty"))
}

/// The best coefficient over `n' ∈ (lo, hi]`, ties to the smallest `n'`
/// and then the smallest `m`.
pub fn best_asymptotic_coefficient(k: usize, lo: usize, hi: usize) -> Result<(ExactRational, usize, usize)> {
    let lo = lo.max(2 * k);
    if hi <= lo {
        return Err(invalid(format!("empty scan range ({lo}, {hi}] for k = {k}")));
    }
    let all: Vec<(ExactRational, usize, usize)> = (lo + 1..=hi)
        .into_par_iter()
        .map(|np| asymptotic_coefficient(k, np).map(|(v, m)| (v, np, m)))
        .collect::<Result<_>>()?;
    let mut best = all[0].clone();
    for cand in all.into_iter().skip(1) {
        if cand.0 > best.0 {
            best = cand;
        }
    }
    Ok(best)
}

/// Default scan range `(2k, 8k]`.
pub fn default_scan(k: usize) -> (usize, usize) {
    (2 * k, 8 * k)
}

/// Everything the counting bound says about one `(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k: usize,
    pub n: usize,
    /// `L_{k,n}(m)` for `m = 0..=5`.
    pub l_values: Vec<ExactRational>,
    pub best_m: usize,
    pub cap_active: bool,
    pub best_rational: ExactRational,
    /// `max(0, ⌈best_rational⌉)`, since `ν` is a nonnegative integer.
    pub best_bound: u64,
    pub piecewise: Option<PiecewiseBound>,
}

impl BoundReport {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        let l_values = (0..=MAX_M).map(|m| l_bound(k, n, m)).collect::<Result<Vec<_>>>()?;
        let (m, cap_active) = best_m(k, n)?;
        let best_rational = l_values[m].clone();
        let max = l_values.iter().max().expect("nonempty");
        debug_assert_eq!(max, &best_rational);
        let best_bound = ceil_nonneg(&best_rational);
        let piecewise = if k >= 3 { Some(piecewise_bound(k, n)?) } else { None };
        Ok(BoundReport { k, n, l_values, best_m: m, cap_active, best_rational, best_bound, piecewise })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "n": self.n,
            "l_values": self.l_values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "best_m": self.best_m,
            "cap_active": self.cap_active,
            "best_rational": self.best_rational.to_string(),
            "best_bound": self.best_bound,
            "piecewise": self.piecewise.as_ref().map(|t| serde_json::json!({
                "value": t.value.to_string(),
                "branch": t.branch,
                "beta": t.beta,
                "vacuous": t.vacuous,
            })),
        })
    }
}

/// `max(0, ⌈x⌉)`.
pub fn ceil_nonneg(x: &ExactRational) -> u64 {
    if x.is_negative() || x.is_zero() {
        return 0;
    }
    x.ceil().to_integer().to_u64().expect("bound fits in u64")
}
