use crate::network::{potential_loads, ResourceLedger, SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

use super::paths::influence_weight;
use super::{EmbeddedPath, Embedding};

/// Interference-weighted load `sum_l (d_l + 1) * lambda_l` of the active
/// embeddings plus `candidate`. Smaller is better.
pub fn sigma<'a, S: Scalar>(
    sn: &SubstrateNetwork<S>,
    active: impl IntoIterator<Item = &'a Embedding<S>>,
    candidate: &'a Embedding<S>,
) -> S {
    let loads = potential_loads(sn, active.into_iter().chain(std::iter::once(candidate)))
        .expect("embeddings reference substrate links");
    (0..sn.link_count())
        .map(|l| S::from_count(sn.interferer_count(l) + 1) * loads.get(l))
        .sum()
}

/// Same quantity written as `sum_l Req(l) * d_I(l)` over per-link routed
/// bandwidth.
pub fn sigma_of_requirements<S: Scalar>(sn: &SubstrateNetwork<S>, req: &[S]) -> S {
    req.iter()
        .enumerate()
        .map(|(l, &r)| r * influence_weight(sn, l))
        .sum()
}

/// Metric of `candidate` on top of the bandwidth already recorded in
/// `ledger`.
pub fn sigma_with_ledger<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    candidate: &Embedding<S>,
) -> S {
    let base = sigma_of_requirements(sn, ledger.allocated_bw_all());
    candidate
        .bw_alloc()
        .iter()
        .fold(base, |acc, (&l, &bw)| acc + bw * influence_weight(sn, l))
}

/// Increase of the metric caused by routing `bw` over `path`.
pub fn sigma_increment<S: Scalar>(sn: &SubstrateNetwork<S>, bw: S, path: &EmbeddedPath) -> S {
    bw * path.links.iter().map(|&l| influence_weight(sn, l)).sum::<S>()
}

/// Revenue of a request: total CPU plus `alpha` times total bandwidth.
pub fn revenue<S: Scalar>(vn: &VirtualNetworkRequest<S>, alpha: S) -> S {
    vn.total_cpu() + alpha * vn.total_bw()
}
