//! Lower bounds on `e_ℓ(n)` from chains of glued copies of `D_{n',i}`.

use super::{EdgeMaxRecord, Method, Status};
use crate::convex::{parallel_compose, reduced_complete, CompositionSpec, ConvexGraph};
use crate::error::{invalid, Result};
use crate::rational::isqrt_ceil;

/// Stored optimal graphs for `ℓ = 4`, found by exhaustive search and checked
/// against it in the tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Golden {
    /// 11 edges on 7 vertices.
    S7,
    /// The other 11-edge class on 7 vertices.
    S7Prime,
    /// 13 edges on 8 vertices.
    S8,
}

pub fn golden_certificate(which: Golden) -> ConvexGraph {
    let text = match which {
        Golden::S7 => include_str!("../../data/s7.txt"),
        Golden::S7Prime => include_str!("../../data/s7_prime.txt"),
        Golden::S8 => include_str!("../../data/s8.txt"),
    };
    ConvexGraph::from_text(text).expect("golden certificate parses")
}

/// The block size `n' = 2 + max(1, ⌈2√ℓ⌉)` and removal count
/// `i = ⌊(n'−2)²/4⌋ − ℓ`, so that `D_{n',i}` has local crossing number `ℓ`.
pub(crate) fn block_parameters(ell: usize) -> (usize, usize) {
    let s = (isqrt_ceil(4 * ell as u128) as usize).max(1);
    let nprime = s + 2;
    (nprime, s * s / 4 - ell)
}

fn measured(ell: usize, n: usize, cert: ConvexGraph) -> EdgeMaxRecord {
    debug_assert_eq!(cert.n(), n);
    debug_assert!(cert.local_crossing_number() <= ell);
    EdgeMaxRecord {
        ell,
        n,
        value: cert.edge_count() as u64,
        method: Method::CompositionLower,
        status: Status::Inexact,
        certificate: Some(cert),
        clamped: false,
        nodes: 0,
    }
}

/// `q·D_{n',i} ⊘ D_r` with `n = q(n'−2) + r`, `2 ≤ r < n'`; `r = 2` means no
/// remainder and `q = 0` means `D_n` alone.
pub(crate) fn generic_composition(ell: usize, n: usize) -> Result<EdgeMaxRecord> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let (nprime, i) = block_parameters(ell);
    if n < nprime {
        return Ok(measured(ell, n, reduced_complete(n, 0).or_else(|_| d3(n))?));
    }
    let step = nprime - 2;
    // r in 2..nprime with r ≡ n (mod step)
    let mut r = (n - 2) % step + 2;
    let mut q = (n - r) / step;
    if r == nprime {
        r = 2;
        q += 1;
    }
    let block = if nprime >= 4 { reduced_complete(nprime, i)? } else { d3(3)? };
    let remainder = if r == 2 { None } else { Some(reduced_complete(r, 0).or_else(|_| d3(r))?) };
    let cert = parallel_compose(&CompositionSpec::repeated(&block, q, remainder))?;
    Ok(measured(ell, n, cert))
}

fn d3(n: usize) -> Result<ConvexGraph> {
    ConvexGraph::empty(n, false)
}

/// The best composition certificate: the generic chain, or for `ℓ = 4` a
/// chain of `D_6` ending in `S_8`, `D_5`, `D_6` or `S_7` according to `n mod 4`.
/// The value is the certificate's measured edge count.
pub fn emax_composition_bound(ell: usize, n: usize) -> Result<EdgeMaxRecord> {
    let generic = generic_composition(ell, n)?;
    if ell != 4 {
        return Ok(generic);
    }
    let tail = match n % 4 {
        0 => golden_certificate(Golden::S8),
        1 => reduced_complete(5, 0)?,
        2 => reduced_complete(6, 0)?,
        _ => golden_certificate(Golden::S7),
    };
    if n < tail.n() {
        return Ok(generic);
    }
    let q = (n - tail.n()) / 4;
    let cert = parallel_compose(&CompositionSpec::repeated(&reduced_complete(6, 0)?, q, Some(tail)))?;
    let special = measured(ell, n, cert);
    Ok(if special.value > generic.value { special } else { generic })
}
