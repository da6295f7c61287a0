//! Embedding representation and the joint node/link embedding search.

mod metric;
mod paths;
mod record;
mod search;
mod sequence;

use std::collections::{BTreeMap, HashSet};

pub use metric::{revenue, sigma, sigma_increment, sigma_of_requirements, sigma_with_ledger};
pub use paths::{influence_distance, influence_weight, shortest_path_tree, LinkWeight, ShortestPathTree};
pub use record::EmbeddingRecord;
pub use search::{
    build_candidate, embed, place_next_node, wem_embed, Candidate, EmbedDecision, EmbedParams,
    PartialEmbedding, Placement, PlacementFailure,
};
pub use sequence::{extended_remaining, extended_required, select_roots, vn_node_sequence};

use crate::error::{Error, Result};
use crate::network::{LinkId, NodeId, SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

/// A simple substrate path as its node sequence and the links between
/// consecutive nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EmbeddedPath {
    pub nodes: Vec<NodeId>,
    pub links: Vec<LinkId>,
}

impl EmbeddedPath {
    /// Resolves a node sequence to links; fails on missing links or repeated
    /// nodes.
    pub fn from_nodes<S: Scalar>(sn: &SubstrateNetwork<S>, nodes: Vec<NodeId>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(nodes.len());
        for &n in &nodes {
            if n >= sn.node_count() {
                return Err(Error::UnknownNode(n.to_string()));
            }
            if !seen.insert(n) {
                return Err(Error::InvalidParameter(format!(
                    "path revisits node `{}`",
                    sn.name(n)
                )));
            }
        }
        let links = nodes
            .windows(2)
            .map(|w| {
                sn.link_between(w[0], w[1]).ok_or_else(|| {
                    Error::UnknownLink(sn.name(w[0]).to_string(), sn.name(w[1]).to_string())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EmbeddedPath { nodes, links })
    }

    pub fn hops(&self) -> usize {
        self.links.len()
    }

    pub fn source(&self) -> Option<NodeId> {
        self.nodes.first().copied()
    }

    pub fn target(&self) -> Option<NodeId> {
        self.nodes.last().copied()
    }
}

/// Mapping of one request onto the substrate: an injective node map, one
/// substrate path per virtual link, and the resources taken.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<S> {
    vn_id: u64,
    node_map: Vec<NodeId>,
    paths: Vec<EmbeddedPath>,
    cpu_alloc: BTreeMap<NodeId, S>,
    bw_alloc: BTreeMap<LinkId, S>,
}

impl<S: Scalar> Embedding<S> {
    /// Validates and builds an embedding. `paths[i]` embeds virtual link `i`
    /// and may run in either direction between the mapped endpoints.
    pub fn new(
        sn: &SubstrateNetwork<S>,
        vn: &VirtualNetworkRequest<S>,
        node_map: Vec<NodeId>,
        paths: Vec<EmbeddedPath>,
    ) -> Result<Self> {
        if node_map.len() != vn.node_count() {
            return Err(Error::InvalidParameter(format!(
                "node map covers {} of {} virtual nodes",
                node_map.len(),
                vn.node_count()
            )));
        }
        let mut hosts = HashSet::with_capacity(node_map.len());
        for &s in &node_map {
            if s >= sn.node_count() {
                return Err(Error::UnknownNode(s.to_string()));
            }
            if !hosts.insert(s) {
                return Err(Error::InvalidParameter(format!(
                    "substrate node `{}` hosts two virtual nodes of one request",
                    sn.name(s)
                )));
            }
        }
        if paths.len() != vn.links().len() {
            return Err(Error::InvalidParameter(format!(
                "{} paths for {} virtual links",
                paths.len(),
                vn.links().len()
            )));
        }
        let mut bw_alloc = BTreeMap::new();
        for (idx, (vl, path)) in vn.links().iter().zip(&paths).enumerate() {
            let checked = EmbeddedPath::from_nodes(sn, path.nodes.clone())?;
            if checked.links != path.links {
                return Err(Error::InvalidParameter(format!("path of virtual link {idx} is inconsistent")));
            }
            let ends = (path.source(), path.target());
            let (x, y) = (Some(node_map[vl.a]), Some(node_map[vl.b]));
            if ends != (x, y) && ends != (y, x) {
                return Err(Error::InvalidParameter(format!(
                    "path of virtual link ({}, {}) does not join its mapped endpoints",
                    vn.name(vl.a),
                    vn.name(vl.b)
                )));
            }
            for &l in &path.links {
                let e = bw_alloc.entry(l).or_insert_with(S::zero);
                *e = *e + vl.bw;
            }
        }
        let cpu_alloc = vn.nodes().map(|v| (node_map[v], vn.cpu(v))).collect();
        Ok(Embedding { vn_id: vn.id(), node_map, paths, cpu_alloc, bw_alloc })
    }

    pub fn vn_id(&self) -> u64 {
        self.vn_id
    }

    /// Substrate host of each virtual node.
    pub fn node_map(&self) -> &[NodeId] {
        &self.node_map
    }

    pub fn host(&self, v: NodeId) -> NodeId {
        self.node_map[v]
    }

    /// Substrate path of each virtual link.
    pub fn paths(&self) -> &[EmbeddedPath] {
        &self.paths
    }

    pub fn cpu_alloc(&self) -> &BTreeMap<NodeId, S> {
        &self.cpu_alloc
    }

    pub fn bw_alloc(&self) -> &BTreeMap<LinkId, S> {
        &self.bw_alloc
    }

    /// Bandwidth this embedding routes over `l`.
    pub fn bw_on(&self, l: LinkId) -> S {
        self.bw_alloc.get(&l).copied().unwrap_or_else(S::zero)
    }
}
