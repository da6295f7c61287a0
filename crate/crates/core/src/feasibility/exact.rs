use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{ConflictGraph, LoadVector};
use crate::scalar::{LpField, Scalar};

use super::lp::solve_packing;
use super::{loaded_vertices, Detail, Method, Verdict};

/// Slack allowed on the total time-sharing budget, matching the tolerance of
/// the sufficient condition so that the two never disagree on rounding.
pub const EXACT_TOLERANCE: f64 = 1e-9;

/// Hard ceiling imposed by the bitset representation.
const BITSET_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactParams {
    /// Largest number of positively loaded vertices the oracle accepts.
    pub limit: usize,
}

impl Default for ExactParams {
    fn default() -> Self {
        ExactParams { limit: 20 }
    }
}

/// All maximal independent sets of `cg` as bitmasks over its vertices,
/// sorted ascending. Requires at most 64 vertices.
pub fn maximal_independent_sets(cg: &ConflictGraph) -> Vec<u64> {
    let n = cg.vertex_count();
    assert!(n <= BITSET_LIMIT, "bitset enumeration supports at most 64 vertices");
    if n == 0 {
        return Vec::new();
    }
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Maximal independent sets are maximal cliques of the complement.
    let compat: Vec<u64> = (0..n)
        .map(|v| {
            let conflicts = cg.neighbors(v).iter().fold(1u64 << v, |m, &w| m | (1u64 << w));
            all & !conflicts
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(0, all, 0, &compat, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, compat: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| ((p & compat[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p nonempty");
    for v in bits(p & !compat[pivot]) {
        let bit = 1u64 << v;
        bron_kerbosch(r | bit, p & compat[v], x & compat[v], compat, out);
        p &= !bit;
        x |= bit;
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Exact schedulability decision over arbitrary-precision rationals.
pub fn exact_oracle<S: Scalar>(cg: &ConflictGraph, loads: &LoadVector<S>, params: &ExactParams) -> Result<Verdict> {
    exact_oracle_in::<BigRational, S>(cg, loads, params)
}

/// Exact oracle with the linear program solved over the field `F`.
///
/// The loads are feasible iff the least total activation time
/// `min sum_S x_S` subject to `sum_{S ∋ l} x_S >= lambda_l` over maximal
/// independent sets `S` is at most one. That minimum is obtained from the
/// dual packing program `max lambda·y  s.t.  sum_{l in S} y_l <= 1`.
pub fn exact_oracle_in<F: LpField, S: Scalar>(
    cg: &ConflictGraph,
    loads: &LoadVector<S>,
    params: &ExactParams,
) -> Result<Verdict> {
    let active = loaded_vertices(cg, loads);
    let limit = params.limit.min(BITSET_LIMIT);
    if active.len() > limit {
        return Err(Error::TooLarge { vertices: active.len(), limit });
    }
    if active.is_empty() {
        return Ok(Verdict {
            feasible: true,
            method: Method::Exact,
            detail: Detail::Exact { optimum: 0.0, certificate: Vec::new() },
        });
    }
    let sub = cg.induced(&active);
    let sets = maximal_independent_sets(&sub);
    let a: Vec<Vec<F>> = sets
        .iter()
        .map(|&s| {
            (0..active.len())
                .map(|j| if s & (1u64 << j) != 0 { F::one() } else { F::zero() })
                .collect()
        })
        .collect();
    let b = vec![F::one(); sets.len()];
    let c = active
        .iter()
        .map(|&v| {
            F::from_f64_exact(loads.get(v).as_f64())
                .ok_or_else(|| Error::InvalidParameter(format!("load of vertex {v} is not finite")))
        })
        .collect::<Result<Vec<F>>>()?;
    let sol = solve_packing(&a, &b, &c).expect("every vertex lies in some maximal independent set");
    let budget = F::one() + F::from_f64_exact(EXACT_TOLERANCE).expect("finite");
    let feasible = sol.optimum <= budget;
    let certificate = sets
        .iter()
        .zip(&sol.duals)
        .filter(|(_, x)| x.is_positive_tol())
        .map(|(&s, x)| (bits(s).map(|j| active[j]).collect(), x.to_f64_lossy()))
        .collect();
    Ok(Verdict {
        feasible,
        method: Method::Exact,
        detail: Detail::Exact { optimum: sol.optimum.to_f64_lossy(), certificate },
    })
}
