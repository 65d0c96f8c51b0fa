//! The conjectured crossing count `Z_k(n)` and the drawings that attain it.

mod construct;
mod drawing;

pub use construct::{
    block_permutation_variant, boundary_move_variant, block_structure, dps_construction,
    matching_class, BlockStructure,
};
pub use drawing::{count_monochromatic_crossings, BookDrawing, DrawingJson};

use num_traits::ToPrimitive;

use crate::error::{invalid, Result};
use crate::rational::{int, rat, ExactRational};

/// `n = qk + r` with `0 < r ≤ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZkParams {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub r: usize,
}

impl ZkParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(invalid(format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
        }
        let r = match n % k {
            0 => k,
            rem => rem,
        };
        let q = (n - r) / k;
        debug_assert_eq!(q * k + r, n);
        Ok(ZkParams { n, k, q, r })
    }
}

/// `F(r, n) = r(r² − 3r + 2)(2n − 3 − r) / 24`.
pub fn f_term(r: i64, n: i64) -> ExactRational {
    int(r) * int(r * r - 3 * r + 2) * int(2 * n - 3 - r) * rat(1, 24)
}

/// `Z_k(n) = (n mod k)·F(⌊n/k⌋ + 1, n) + (k − n mod k)·F(⌊n/k⌋, n)`.
///
/// Panics if the formula does not evaluate to a nonnegative integer, which
/// would indicate an arithmetic bug rather than bad input.
pub fn zk_value(n: usize, k: usize) -> u64 {
    assert!(n >= 1 && k >= 1, "zk_value needs n >= 1 and k >= 1");
    let (n, k) = (n as i64, k as i64);
    let rem = n % k;
    let quot = n / k;
    let total = int(rem) * f_term(quot + 1, n) + int(k - rem) * f_term(quot, n);
    assert!(total.is_integer(), "Z_{k}({n}) = {total} is not an integer");
    total.to_integer().to_u64().expect("Z_k(n) is nonnegative")
}

/// The leading coefficient `(2/k²)(1 − 1/(2k))` of `Z_k(n) / C(n, 4)`.
pub fn zk_asymptotic_coefficient(k: usize) -> ExactRational {
    let k = k as i64;
    rat(2, k * k) * (int(1) - rat(1, 2 * k))
}
