use std::cmp::Ordering;

use crate::network::{ConflictGraph, LinkId};
use crate::scalar::Scalar;

/// Greedy maximum-weight independent set: take the heaviest remaining
/// vertex (lower id on ties), drop its neighbors, repeat while positive
/// weight remains. Returns vertices in id order.
pub fn greedy_mwis<S: Scalar>(cg: &ConflictGraph, weights: &[S]) -> Vec<LinkId> {
    let mut order: Vec<LinkId> = (0..cg.vertex_count())
        .filter(|&v| weights.get(v).is_some_and(|&w| w > S::zero()))
        .collect();
    order.sort_by(|&a, &b| weights[b].partial_cmp(&weights[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    let mut blocked = vec![false; cg.vertex_count()];
    let mut chosen = Vec::new();
    for v in order {
        if blocked[v] {
            continue;
        }
        chosen.push(v);
        for &w in cg.neighbors(v) {
            blocked[w] = true;
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Exhaustive maximum-weight independent set for small graphs (≤ 25
/// vertices). Used as a reference for the greedy scheduler.
pub fn max_weight_independent_set<S: Scalar>(cg: &ConflictGraph, weights: &[S]) -> (S, Vec<LinkId>) {
    let n = cg.vertex_count();
    assert!(n <= 25, "exhaustive search limited to 25 vertices");
    let masks: Vec<u32> = (0..n)
        .map(|v| cg.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut best = (S::zero(), 0u32);
    // Depth-first over include/exclude decisions.
    fn go<S: Scalar>(v: usize, n: usize, set: u32, weight: S, masks: &[u32], w: &[S], best: &mut (S, u32)) {
        if v == n {
            if weight > best.0 {
                *best = (weight, set);
            }
            return;
        }
        go(v + 1, n, set, weight, masks, w, best);
        if set & masks[v] == 0 {
            go(v + 1, n, set | (1 << v), weight + w[v].max(S::zero()), masks, w, best);
        }
    }
    go(0, n, 0, S::zero(), &masks, weights, &mut best);
    (best.0, (0..n).filter(|&v| best.1 & (1 << v) != 0).collect())
}
