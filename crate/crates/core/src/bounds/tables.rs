//! CSV renderings of the known-values grid, the asymptotic comparison and
//! the best asymptotic coefficients for `14 ≤ k ≤ 20`.
//!
//! Rationals are written as `p/q`. The two coefficient columns truncate
//! while the ratio column rounds, matching the published comparison.

use std::fmt::Write as _;

use super::{best_asymptotic_coefficient, default_scan, exact_range_value, BoundReport};
use crate::error::{invalid, Result};
use crate::rational::{format_fixed_with, format_sci_with, ExactRational, Rounding};
use crate::zk::{zk_asymptotic_coefficient, zk_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    KnownValues,
    Comparison,
    Coefficients,
}

impl TableId {
    pub fn from_number(which: u8) -> Result<Self> {
        match which {
            1 => Ok(TableId::KnownValues),
            2 => Ok(TableId::Comparison),
            3 => Ok(TableId::Coefficients),
            _ => Err(invalid(format!("table must be 1, 2 or 3, got {which}"))),
        }
    }
}

/// One cell of the `ν_k(K_n)` grid for `2 ≤ k ≤ 7`, `5 ≤ n ≤ 22`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownValueRow {
    pub k: usize,
    pub n: usize,
    /// `None` where the value is open.
    pub value: Option<u64>,
    /// `two-page`, `vanishing`, `exact-range` or `literature`.
    pub source: &'static str,
    pub lower_bound: u64,
    pub upper_bound: u64,
}

/// Largest `n` with a known value in each row `k = 2..=7` of the grid.
const KNOWN_UP_TO: [(usize, usize); 6] = [(2, 22), (3, 15), (4, 13), (5, 15), (6, 18), (7, 21)];

pub fn known_value_rows() -> Result<Vec<KnownValueRow>> {
    let mut rows = Vec::new();
    for (k, last) in KNOWN_UP_TO {
        for n in 5..=22 {
            let upper = zk_value(n, k);
            let lower = BoundReport::new(k, n)?.best_bound;
            let (value, source) = if n > last {
                (None, "open")
            } else if k == 2 {
                (Some(upper), "two-page")
            } else if n <= 2 * k {
                (Some(0), "vanishing")
            } else if n <= 3 * k {
                (Some(exact_range_value(k, n)?), "exact-range")
            } else {
                (Some(upper), "literature")
            };
            rows.push(KnownValueRow { k, n, value, source, lower_bound: lower, upper_bound: upper });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub k: usize,
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub ratio: ExactRational,
}

impl ComparisonRow {
    pub fn lower_text(&self) -> String {
        format_sci_with(&self.lower, 5, Rounding::Truncate)
    }

    pub fn upper_text(&self) -> String {
        format_sci_with(&self.upper, 5, Rounding::Truncate)
    }

    pub fn ratio_text(&self) -> String {
        format_fixed_with(&self.ratio, 4, Rounding::HalfEven)
    }
}

pub fn comparison_rows() -> Result<Vec<ComparisonRow>> {
    coefficient_rows()?
        .into_iter()
        .map(|r| {
            let upper = zk_asymptotic_coefficient(r.k);
            let ratio = &r.coefficient / &upper;
            Ok(ComparisonRow { k: r.k, lower: r.coefficient, upper, ratio })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    pub k: usize,
    pub coefficient: ExactRational,
    pub nprime: usize,
    pub m: usize,
    /// The bound holds for every `n` at or above this.
    pub valid_from: usize,
}

pub fn coefficient_rows() -> Result<Vec<CoefficientRow>> {
    (14..=20)
        .map(|k| {
            let (lo, hi) = default_scan(k);
            let (coefficient, nprime, m) = best_asymptotic_coefficient(k, lo, hi)?;
            Ok(CoefficientRow { k, coefficient, nprime, m, valid_from: nprime })
        })
        .collect()
}

/// The table as CSV with a header line.
pub fn emit_table(which: TableId) -> Result<String> {
    let mut out = String::new();
    match which {
        TableId::KnownValues => {
            out.push_str("k,n,value,source,lower_bound,upper_bound\n");
            for r in known_value_rows()? {
                let value = r.value.map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(out, "{},{},{},{},{},{}", r.k, r.n, value, r.source, r.lower_bound, r.upper_bound);
            }
        }
        TableId::Comparison => {
            out.push_str("k,new_lower,upper,ratio,new_lower_exact,upper_exact\n");
            for r in comparison_rows()? {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.k,
                    r.lower_text(),
                    r.upper_text(),
                    r.ratio_text(),
                    r.lower,
                    r.upper
                );
            }
        }
        TableId::Coefficients => {
            out.push_str("k,coefficient,nprime,m,valid_from\n");
            for r in coefficient_rows()? {
                let _ = writeln!(out, "{},{},{},{},{}", r.k, r.coefficient, r.nprime, r.m, r.valid_from);
            }
        }
    }
    Ok(out)
}
