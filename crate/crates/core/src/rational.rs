//! Exact rational helpers.
//!
//! Every bound, table entry and closed form in this crate is an
//! [`ExactRational`]; floating point only appears when rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational in canonical reduced form.
pub type ExactRational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An integer as an exact rational.
pub fn int(value: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn as_i64(value: &ExactRational) -> Option<i64> {
    if value.is_integer() {
        value.to_integer().to_i64()
    } else {
        None
    }
}

/// Smallest integer `>= value`.
pub fn ceil_to_i64(value: &ExactRational) -> Option<i64> {
    value.ceil().to_integer().to_i64()
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient as an exact rational.
pub fn binomial_rat(n: u64, k: u64) -> ExactRational {
    BigRational::from_integer(binomial(n, k))
}

/// Lossy conversion for plotting and logging only.
pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), exp as usize)
}

/// Rounds to the nearest integer, ties to even.
pub fn round_half_even(value: &ExactRational) -> BigInt {
    let floor = value.floor();
    let frac = value - &floor;
    let half = rat(1, 2);
    let floor = floor.to_integer();
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// How to drop digits when rendering a rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    HalfEven,
    /// Toward zero: the digits shown are a prefix of the exact expansion.
    Truncate,
}

fn round_with(value: &ExactRational, mode: Rounding) -> BigInt {
    match mode {
        Rounding::HalfEven => round_half_even(value),
        Rounding::Truncate => value.trunc().to_integer(),
    }
}

/// Scientific notation with `sig` significant digits, e.g. `3.4342e-3`.
pub fn format_sci(value: &ExactRational, sig: usize) -> String {
    format_sci_with(value, sig, Rounding::HalfEven)
}

/// [`format_sci`] with an explicit rounding mode.
pub fn format_sci_with(value: &ExactRational, sig: usize, mode: Rounding) -> String {
    assert!(sig >= 1);
    if value.is_zero() {
        return format!("{}e0", format_mantissa(&BigInt::zero(), sig));
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let abs = value.abs();

    // exponent e with 10^e <= abs < 10^(e+1)
    let mut exp: i64 = 0;
    let ten = int(10);
    let mut scaled = abs.clone();
    while scaled >= ten {
        scaled /= &ten;
        exp += 1;
    }
    while scaled < ExactRational::one() {
        scaled *= &ten;
        exp -= 1;
    }

    let shift = pow10(sig as u32 - 1);
    let mut mantissa = round_with(&(scaled * BigRational::from_integer(shift)), mode);
    if mantissa == pow10(sig as u32) {
        mantissa /= 10;
        exp += 1;
    }
    format!("{sign}{}e{exp}", format_mantissa(&mantissa, sig))
}

fn format_mantissa(mantissa: &BigInt, sig: usize) -> String {
    let digits = format!("{:0>width$}", mantissa, width = sig);
    if sig == 1 {
        digits
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    }
}

/// Fixed-point rendering with `places` digits after the point, ties to even.
pub fn format_fixed(value: &ExactRational, places: usize) -> String {
    format_fixed_with(value, places, Rounding::HalfEven)
}

/// [`format_fixed`] with an explicit rounding mode.
pub fn format_fixed_with(value: &ExactRational, places: usize, mode: Rounding) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let scaled = round_with(&(value.abs() * BigRational::from_integer(pow10(places as u32))), mode);
    let digits = format!("{:0>width$}", scaled, width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Smallest `s` with `s * s >= value`.
pub fn isqrt_ceil(value: u128) -> u128 {
    if value == 0 {
        return 0;
    }
    let mut s = (value as f64).sqrt() as u128;
    while s * s > value {
        s -= 1;
    }
    while s * s < value {
        s += 1;
    }
    s
}

/// The smallest fraction `p/q >= sqrt(num/den)` with `q <= max_den`.
///
/// Walks the Stern–Brocot tree with batched steps, comparing squares in
/// integer arithmetic, so no floating point is involved.
pub fn sqrt_upper(num: u64, den: u64, max_den: u64) -> ExactRational {
    assert!(den > 0 && max_den > 0);
    let (num, den) = (num as u128, den as u128);
    // p/q >= sqrt(num/den)  <=>  p^2 * den >= num * q^2
    let at_least = |p: u128, q: u128| p * p * den >= num * q * q;

    if num == 0 {
        return int(0);
    }
    let max_den = max_den as u128;
    let (mut lo_p, mut lo_q) = (0u128, 1u128);
    let (mut hi_p, mut hi_q) = (1u128, 0u128);
    loop {
        let (mp, mq) = (lo_p + hi_p, lo_q + hi_q);
        if mq > max_den {
            break;
        }
        if at_least(mp, mq) {
            // slide hi toward lo: hi + t*lo stays >= target for t up to some bound
            let mut t = 1u128;
            let limit = (max_den - hi_q) / lo_q;
            let mut step = 1u128;
            while t + step <= limit && at_least(hi_p + (t + step) * lo_p, hi_q + (t + step) * lo_q) {
                t += step;
                step *= 2;
            }
            while step > 1 {
                step /= 2;
                if t + step <= limit && at_least(hi_p + (t + step) * lo_p, hi_q + (t + step) * lo_q) {
                    t += step;
                }
            }
            hi_p += t * lo_p;
            hi_q += t * lo_q;
        } else {
            let mut t = 1u128;
            let limit = if hi_q == 0 { isqrt_ceil(num / den + 1) + 1 } else { (max_den - lo_q) / hi_q };
            let mut step = 1u128;
            while t + step <= limit && !at_least(lo_p + (t + step) * hi_p, lo_q + (t + step) * hi_q) {
                t += step;
                step *= 2;
            }
            while step > 1 {
                step /= 2;
                if t + step <= limit && !at_least(lo_p + (t + step) * hi_p, lo_q + (t + step) * hi_q) {
                    t += step;
                }
            }
            lo_p += t * hi_p;
            lo_q += t * hi_q;
        }
    }
    assert!(hi_q > 0, "max_den too small to bound the root");
    BigRational::new(BigInt::from(hi_p), BigInt::from(hi_q))
}
