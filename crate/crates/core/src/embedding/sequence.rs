use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::network::{hop_distances, NodeId, ResourceLedger, SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

/// CPU demand of `n` plus `alpha` times the bandwidth of its incident links.
pub fn extended_required<S: Scalar>(vn: &VirtualNetworkRequest<S>, n: NodeId, alpha: S) -> Result<S> {
    if n >= vn.node_count() {
        return Err(Error::UnknownNode(n.to_string()));
    }
    let bw: S = vn.incident(n).iter().map(|&(_, l)| vn.link(l).bw).sum();
    Ok(vn.cpu(n) + alpha * bw)
}

/// Residual CPU of `n` plus `alpha` times the residual capacity of its
/// incident links.
pub fn extended_remaining<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    n: NodeId,
    alpha: S,
) -> Result<S> {
    if n >= sn.node_count() {
        return Err(Error::UnknownNode(n.to_string()));
    }
    let bw: S = sn.incident(n).iter().map(|&(_, l)| ledger.residual_bw(sn, l)).sum();
    Ok(ledger.residual_cpu(n) + alpha * bw)
}

/// Order in which virtual nodes are embedded: the node with the largest
/// extended requirement first, then by hop distance from it, larger
/// extended requirement first among equals, then by id.
pub fn vn_node_sequence<S: Scalar>(vn: &VirtualNetworkRequest<S>, alpha: S) -> Result<Vec<NodeId>> {
    vn.ensure_connected()?;
    if vn.node_count() == 0 {
        return Ok(Vec::new());
    }
    let ext: Vec<S> = vn
        .nodes()
        .map(|n| extended_required(vn, n, alpha))
        .collect::<Result<_>>()?;
    let first = vn
        .nodes()
        .max_by(|&a, &b| ext[a].partial_cmp(&ext[b]).unwrap_or(Ordering::Equal).then(b.cmp(&a)))
        .expect("non-empty");
    let hops = hop_distances(vn.adjacency(), first);
    let mut order: Vec<NodeId> = vn.nodes().collect();
    order.sort_by(|&a, &b| {
        hops[a]
            .cmp(&hops[b])
            .then_with(|| ext[b].partial_cmp(&ext[a]).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    });
    debug_assert_eq!(order[0], first);
    Ok(order)
}

/// The `k` substrate nodes with the largest extended remaining resource,
/// ties by lower id.
pub fn select_roots<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    k: usize,
    alpha: S,
) -> Vec<NodeId> {
    ranked_nodes(sn, ledger, alpha).into_iter().take(k).collect()
}

/// All substrate nodes by descending extended remaining resource.
pub(crate) fn ranked_nodes<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    alpha: S,
) -> Vec<NodeId> {
    let score: Vec<S> = sn
        .nodes()
        .map(|n| extended_remaining(sn, ledger, n, alpha).expect("node in range"))
        .collect();
    let mut nodes: Vec<NodeId> = sn.nodes().collect();
    nodes.sort_by(|&a, &b| score[b].partial_cmp(&score[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    nodes
}
