use crate::network::{ConflictGraph, LoadVector};
use crate::scalar::Scalar;

use super::{Detail, Method, Verdict};

pub const SUFFICIENT_TOLERANCE: f64 = 1e-9;

/// Feasible when every vertex's load plus its neighbors' loads is at most one.
pub fn sufficient_check<S: Scalar>(cg: &ConflictGraph, loads: &LoadVector<S>) -> Verdict {
    let bound = S::one() + S::lit(SUFFICIENT_TOLERANCE);
    for v in 0..cg.vertex_count() {
        let total = loads.get(v) + cg.neighbors(v).iter().map(|&w| loads.get(w)).sum::<S>();
        if total > bound {
            return Verdict {
                feasible: false,
                method: Method::Sufficient,
                detail: Detail::Sufficient { violating: Some(v), neighborhood_load: total.as_f64() },
            };
        }
    }
    Verdict {
        feasible: true,
        method: Method::Sufficient,
        detail: Detail::Sufficient { violating: None, neighborhood_load: 0.0 },
    }
}
