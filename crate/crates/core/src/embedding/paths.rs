use std::cmp::Ordering;

use crate::network::{LinkId, NodeId, ResourceLedger, SubstrateNetwork};
use crate::scalar::Scalar;

use super::EmbeddedPath;

/// Edge weight used when routing virtual links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkWeight {
    /// Every link costs one hop.
    Hop,
    /// `(interferers + 1) / capacity`.
    Influence,
}

impl LinkWeight {
    pub fn of<S: Scalar>(self, sn: &SubstrateNetwork<S>, l: LinkId) -> S {
        match self {
            LinkWeight::Hop => S::one(),
            LinkWeight::Influence => influence_weight(sn, l),
        }
    }
}

/// Interference-aware cost of a substrate link.
pub fn influence_weight<S: Scalar>(sn: &SubstrateNetwork<S>, l: LinkId) -> S {
    S::from_count(sn.interferer_count(l) + 1) / sn.cap(l)
}

/// Single-source shortest paths over links that can still carry `bw`.
///
/// Among equal-weight paths the lexicographically smallest node sequence
/// wins, which keeps results independent of heap or hash ordering.
#[derive(Debug, Clone)]
pub struct ShortestPathTree<S> {
    source: NodeId,
    dist: Vec<Option<S>>,
    paths: Vec<Option<Vec<NodeId>>>,
}

impl<S: Scalar> ShortestPathTree<S> {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn distance(&self, n: NodeId) -> Option<S> {
        self.dist[n]
    }

    pub fn node_path(&self, n: NodeId) -> Option<&[NodeId]> {
        self.paths[n].as_deref()
    }

    pub fn path<T: Scalar>(&self, sn: &SubstrateNetwork<T>, n: NodeId) -> Option<EmbeddedPath> {
        let nodes = self.paths[n].clone()?;
        let links = nodes
            .windows(2)
            .map(|w| sn.link_between(w[0], w[1]).expect("tree path uses substrate links"))
            .collect();
        Some(EmbeddedPath { nodes, links })
    }
}

fn key_cmp<S: Scalar>(a: (S, &[NodeId]), b: (S, &[NodeId])) -> Ordering {
    a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then_with(|| a.1.cmp(b.1))
}

/// Dijkstra from `src` restricted to links with `allocated + bw <= cap`.
/// `allocated` is indexed by link id.
pub fn shortest_path_tree<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    allocated: &[S],
    src: NodeId,
    bw: S,
    weight: LinkWeight,
) -> ShortestPathTree<S> {
    let n = sn.node_count();
    let tol = S::tolerance();
    let mut dist: Vec<Option<S>> = vec![None; n];
    let mut paths: Vec<Option<Vec<NodeId>>> = vec![None; n];
    let mut done = vec![false; n];
    dist[src] = Some(S::zero());
    paths[src] = Some(vec![src]);
    loop {
        // Dense selection is fine for desk-scale substrates and keeps the
        // lexicographic tie-break simple.
        let mut best: Option<NodeId> = None;
        for v in 0..n {
            if done[v] || dist[v].is_none() {
                continue;
            }
            best = match best {
                None => Some(v),
                Some(b) => {
                    let kv = (dist[v].unwrap(), paths[v].as_deref().unwrap());
                    let kb = (dist[b].unwrap(), paths[b].as_deref().unwrap());
                    if key_cmp(kv, kb) == Ordering::Less {
                        Some(v)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(u) = best else { break };
        done[u] = true;
        let du = dist[u].unwrap();
        for &(v, l) in sn.incident(u) {
            if done[v] || allocated[l] + bw > sn.cap(l) + tol {
                continue;
            }
            let dv = du + weight.of(sn, l);
            let mut cand = paths[u].clone().unwrap();
            cand.push(v);
            let better = match (dist[v], paths[v].as_deref()) {
                (Some(old), Some(old_path)) => key_cmp((dv, &cand), (old, old_path)) == Ordering::Less,
                _ => true,
            };
            if better {
                dist[v] = Some(dv);
                paths[v] = Some(cand);
            }
        }
    }
    ShortestPathTree { source: src, dist, paths }
}

/// Minimum influence weight between two substrate nodes over links whose
/// residual capacity admits `bw`. `None` when unreachable.
pub fn influence_distance<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    src: NodeId,
    dst: NodeId,
    bw: S,
) -> Option<(S, EmbeddedPath)> {
    if src == dst {
        return Some((S::zero(), EmbeddedPath { nodes: vec![src], links: vec![] }));
    }
    let tree = shortest_path_tree(sn, ledger.allocated_bw_all(), src, bw, LinkWeight::Influence);
    Some((tree.distance(dst)?, tree.path(sn, dst)?))
}
