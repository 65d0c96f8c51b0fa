use num_traits::ToPrimitive;

use super::{EdgeMaxRecord, Method, Status};
use crate::error::{invalid, Error, Result};
use crate::rational::{int, isqrt_ceil, rat, sqrt_upper, ExactRational};

/// `e_ℓ(n) = C_ℓ·(n − 3) + δ_ℓ(n)`, valid for `ℓ ≤ 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub ell: usize,
    pub c_ell: ExactRational,
    /// `δ_ℓ(n) = delta[n mod delta.len()]`.
    pub delta: Vec<ExactRational>,
}

impl ClosedForm {
    pub fn for_ell(ell: usize) -> Result<Self> {
        let (c, delta) = match ell {
            0 => (int(1), vec![int(0)]),
            1 => (rat(3, 2), vec![rat(1, 2), int(0)]),
            2 => (int(2), vec![int(0), int(0), int(1)]),
            3 => (rat(9, 4), vec![rat(-1, 4), rat(1, 2), rat(5, 4), int(0)]),
            4 => (rat(5, 2), vec![rat(1, 2), int(0), rat(3, 2), int(1)]),
            _ => return Err(Error::Unsupported(format!("no closed form for e_{ell}(n) with ell > 4"))),
        };
        Ok(ClosedForm { ell, c_ell: c, delta })
    }

    pub fn delta_at(&self, n: usize) -> &ExactRational {
        &self.delta[n % self.delta.len()]
    }

    /// The formula as printed, without clamping.
    pub fn formula(&self, n: usize) -> ExactRational {
        &self.c_ell * int(n as i64 - 3) + self.delta_at(n)
    }
}

/// The closed form, clamped to `C(n,2) − n`; the flag reports whether the
/// clamp was needed.
///
/// The printed formula overshoots only at `(ℓ, n) = (4, 4)`, where it gives
/// 3 although `D_4` has 2 edges.
pub fn emax_closed_form_record(ell: usize, n: usize) -> Result<EdgeMaxRecord> {
    let form = ClosedForm::for_ell(ell)?;
    if n < 3.max(ell) {
        return Err(invalid(format!("closed form needs n >= max(3, ell), got n = {n}, ell = {ell}")));
    }
    let raw = form.formula(n);
    assert!(raw.is_integer(), "closed form e_{ell}({n}) = {raw} is not an integer");
    let raw = raw.to_integer().to_u64().expect("closed form is nonnegative");
    let saturated = (n * (n - 1) / 2 - n) as u64;
    Ok(EdgeMaxRecord {
        ell,
        n,
        value: raw.min(saturated),
        method: Method::ClosedForm,
        status: Status::Exact,
        certificate: None,
        clamped: raw > saturated,
        nodes: 0,
    })
}

/// `e_ℓ(n)` from the closed form, for `ℓ ≤ 4`.
pub fn emax_closed_form(ell: usize, n: usize) -> Result<u64> {
    emax_closed_form_record(ell, n).map(|r| r.value)
}

/// The slope `C_ℓ` in `e_ℓ(n) ≥ C_ℓ·n + Θ(1)`, with `s = ⌈2√ℓ⌉`.
pub fn c_ell(ell: usize) -> ExactRational {
    if ell == 0 {
        return int(1);
    }
    let l = ell as i64;
    let s = isqrt_ceil(4 * ell as u128) as i64;
    let half = rat(1, 2);
    if s % 2 == 0 {
        if s * s - s <= 4 * l + 2 {
            half + rat(s, 4) + rat(l, s)
        } else {
            half + rat(s, 4) + rat(l - 1, s)
        }
    } else if s * s < 4 * l + 5 {
        half + rat(s, 2)
    } else {
        half + rat(s, 4) + (int(l) - rat(3, 4)) / int(s)
    }
}

/// `√(27ℓ/2)·n`, with the root replaced by the smallest fraction above it
/// whose denominator is at most 10⁶.
pub fn analytic_upper(ell: usize, n: usize) -> ExactRational {
    sqrt_upper(27 * ell as u64, 2, 1_000_000) * int(n as i64)
}

/// Exploratory estimate of `M_ℓ = max_n (e_ℓ(n) + 1)/(n − 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MEllEstimate {
    pub value: ExactRational,
    pub argmax_n: usize,
    /// False when some `e_ℓ(n)` in range was only bounded from below.
    pub all_exact: bool,
}

/// Max of `(e_ℓ(n) + 1)/(n − 2)` over `3 ≤ n ≤ n_max`, using the closed form
/// for `ℓ ≤ 4` and [`emax_exact`](super::emax_exact) otherwise.
pub fn m_ell_explore(ell: usize, n_max: usize, budget: &super::SearchBudget) -> Result<MEllEstimate> {
    if n_max < 3 {
        return Err(invalid(format!("need n_max >= 3, got {n_max}")));
    }
    let mut best: Option<(ExactRational, usize)> = None;
    let mut all_exact = true;
    for n in 3..=n_max {
        let e = if ell <= 4 && n >= ell {
            emax_closed_form(ell, n)?
        } else {
            let rec = super::emax_exact(ell, n, budget)?;
            all_exact &= rec.is_exact();
            rec.value
        };
        let ratio = rat(e as i64 + 1, n as i64 - 2);
        if best.as_ref().map_or(true, |(b, _)| ratio > *b) {
            best = Some((ratio, n));
        }
    }
    let (value, argmax_n) = best.expect("range is nonempty");
    Ok(MEllEstimate { value, argmax_n, all_exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(emax_closed_form(1, 6).unwrap(), 5);
        assert_eq!(emax_closed_form(3, 6).unwrap(), 8);
        assert_eq!(emax_closed_form(2, 8).unwrap(), 11);
        assert_eq!(emax_closed_form(4, 70).unwrap(), 169);
        for n in 3..40 {
            assert_eq!(emax_closed_form(0, n).unwrap(), n as u64 - 3);
        }
        assert!(matches!(emax_closed_form(5, 10), Err(Error::Unsupported(_))));
        assert!(emax_closed_form(4, 3).is_err());
    }

    #[test]
    fn only_four_four_is_clamped() {
        for ell in 0..=4 {
            for n in 3.max(ell)..200 {
                let rec = emax_closed_form_record(ell, n).unwrap();
                assert_eq!(rec.clamped, (ell, n) == (4, 4), "ell = {ell}, n = {n}");
            }
        }
        assert_eq!(emax_closed_form(4, 4).unwrap(), 2);
    }

    #[test]
    fn general_slope_matches_small_cases() {
        for ell in 0..=4 {
            assert_eq!(c_ell(ell), ClosedForm::for_ell(ell).unwrap().c_ell);
        }
    }

    #[test]
    fn slope_is_increasing_and_sublinear() {
        for ell in 1..200 {
            assert!(c_ell(ell + 1) >= c_ell(ell));
            // never above the analytic envelope per vertex
            assert!(c_ell(ell) <= analytic_upper(ell, 1));
        }
    }

    #[test]
    fn analytic_upper_values() {
        assert_eq!(analytic_upper(0, 10), int(0));
        let u = analytic_upper(4, 8);
        assert!(u >= int(13));
        assert!(crate::rational::to_f64(&u) - 7.348_469 * 8.0 < 1e-4);
    }

    #[test]
    fn m_ell_small_cases() {
        let budget = crate::emax::SearchBudget::default();
        let m0 = m_ell_explore(0, 12, &budget).unwrap();
        assert_eq!(m0.value, int(1));
        let m4 = m_ell_explore(4, 8, &budget).unwrap();
        assert_eq!((m4.value, m4.argmax_n), (rat(5, 2), 6));
        let m2 = m_ell_explore(2, 6, &budget).unwrap();
        assert_eq!((m2.value, m2.argmax_n), (int(2), 5));
    }
}
