use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::conflict::{build_conflict_graph, ConflictGraph};
use super::{LinkId, NodeId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstrateLink<S> {
    /// Lower endpoint index.
    pub a: NodeId,
    /// Higher endpoint index.
    pub b: NodeId,
    pub cap: S,
}

impl<S> SubstrateLink<S> {
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.a, self.b)
    }

    pub fn other(&self, n: NodeId) -> NodeId {
        if n == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// How the interference relation of a substrate is obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interference {
    /// Links interfere when some pair of their endpoints is within `k - 1` hops.
    KHop(u32),
    /// Explicit symmetric pairs of links, each link given by its endpoints.
    Explicit(Vec<((NodeId, NodeId), (NodeId, NodeId))>),
}

/// Wireless substrate network: undirected graph with node CPU, link
/// capacity, node positions and a link interference relation.
///
/// Links are stored sorted by `(a, b)` with `a < b`, so link ids are stable
/// for a given edge set.
#[derive(Debug, Clone)]
pub struct SubstrateNetwork<S> {
    names: Vec<String>,
    cpu: Vec<S>,
    positions: Vec<(S, S)>,
    links: Vec<SubstrateLink<S>>,
    incident: Vec<Vec<(NodeId, LinkId)>>,
    link_index: HashMap<(NodeId, NodeId), LinkId>,
    interference: Interference,
    conflict: ConflictGraph,
}

impl<S: Scalar> SubstrateNetwork<S> {
    /// Builds and validates a substrate. `positions` may be empty, in which
    /// case every node sits at the origin.
    pub fn new(
        names: Vec<String>,
        cpu: Vec<S>,
        positions: Vec<(S, S)>,
        links: Vec<(NodeId, NodeId, S)>,
        interference: Interference,
    ) -> Result<Self> {
        let n = names.len();
        if cpu.len() != n {
            return Err(Error::InvalidNetwork(format!(
                "{} names but {} cpu values",
                n,
                cpu.len()
            )));
        }
        let positions = if positions.is_empty() {
            vec![(S::zero(), S::zero()); n]
        } else if positions.len() == n {
            positions
        } else {
            return Err(Error::InvalidNetwork("position count mismatch".into()));
        };
        {
            let mut seen = std::collections::HashSet::new();
            for name in &names {
                if !seen.insert(name.as_str()) {
                    return Err(Error::InvalidNetwork(format!("duplicate node `{name}`")));
                }
            }
        }
        for (i, c) in cpu.iter().enumerate() {
            if !c.is_finite() || *c < S::zero() {
                return Err(Error::InvalidNetwork(format!(
                    "node `{}` has invalid cpu {c}",
                    names[i]
                )));
            }
        }

        let mut sorted: Vec<SubstrateLink<S>> = Vec::with_capacity(links.len());
        for (u, v, cap) in links {
            if u >= n || v >= n {
                return Err(Error::InvalidNetwork(format!("link ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidNetwork(format!("self-loop at `{}`", names[u])));
            }
            if !cap.is_finite() || cap <= S::zero() {
                return Err(Error::InvalidNetwork(format!(
                    "link ({}, {}) has non-positive capacity {cap}",
                    names[u], names[v]
                )));
            }
            sorted.push(SubstrateLink { a: u.min(v), b: u.max(v), cap });
        }
        sorted.sort_by_key(|l| (l.a, l.b));
        let mut link_index = HashMap::with_capacity(sorted.len());
        let mut incident = vec![Vec::new(); n];
        for (id, l) in sorted.iter().enumerate() {
            if link_index.insert((l.a, l.b), id).is_some() {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate link ({}, {})",
                    names[l.a], names[l.b]
                )));
            }
            incident[l.a].push((l.b, id));
            incident[l.b].push((l.a, id));
        }
        for adj in &mut incident {
            adj.sort_unstable();
        }

        let mut sn = SubstrateNetwork {
            names,
            cpu,
            positions,
            links: sorted,
            incident,
            link_index,
            interference: interference.clone(),
            conflict: ConflictGraph::empty(0),
        };
        sn.conflict = match &interference {
            Interference::KHop(k) => build_conflict_graph(&sn, *k),
            Interference::Explicit(pairs) => {
                let mut ids = Vec::with_capacity(pairs.len());
                for &((a, b), (c, d)) in pairs {
                    let i = sn.link_between(a, b).ok_or_else(|| sn.unknown_link(a, b))?;
                    let j = sn.link_between(c, d).ok_or_else(|| sn.unknown_link(c, d))?;
                    if i == j {
                        return Err(Error::InvalidNetwork(
                            "a link cannot be listed as its own interferer".into(),
                        ));
                    }
                    ids.push((i, j));
                }
                ConflictGraph::from_pairs(sn.links.len(), ids)
            }
        };
        Ok(sn)
    }

    fn unknown_link(&self, a: NodeId, b: NodeId) -> Error {
        let name = |x: NodeId| self.names.get(x).cloned().unwrap_or_else(|| x.to_string());
        Error::UnknownLink(name(a), name(b))
    }

    /// Same graph and resources with a different interference relation.
    pub fn with_interference(&self, interference: Interference) -> Result<Self> {
        let links = self.links.iter().map(|l| (l.a, l.b, l.cap)).collect();
        Self::new(
            self.names.clone(),
            self.cpu.clone(),
            self.positions.clone(),
            links,
            interference,
        )
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.names.len()
    }

    pub fn name(&self, n: NodeId) -> &str {
        &self.names[n]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|x| x == name)
    }

    pub fn cpu(&self, n: NodeId) -> S {
        self.cpu[n]
    }

    pub fn position(&self, n: NodeId) -> (S, S) {
        self.positions[n]
    }

    pub fn links(&self) -> &[SubstrateLink<S>] {
        &self.links
    }

    pub fn link(&self, l: LinkId) -> &SubstrateLink<S> {
        &self.links[l]
    }

    pub fn cap(&self, l: LinkId) -> S {
        self.links[l].cap
    }

    pub fn link_between(&self, u: NodeId, v: NodeId) -> Option<LinkId> {
        self.link_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// `(neighbor, link)` pairs of `n`, sorted by neighbor id.
    pub fn incident(&self, n: NodeId) -> &[(NodeId, LinkId)] {
        &self.incident[n]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<(NodeId, LinkId)>] {
        &self.incident
    }

    pub fn interference(&self) -> &Interference {
        &self.interference
    }

    pub fn conflict_graph(&self) -> &ConflictGraph {
        &self.conflict
    }

    /// Number of links interfering with `l`, excluding `l` itself.
    pub fn interferer_count(&self, l: LinkId) -> usize {
        self.conflict.degree(l)
    }

    pub fn is_connected(&self) -> bool {
        super::is_connected(&self.incident)
    }

    /// Node sets of the connected components, largest first, ties by lowest
    /// member id.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.node_count()];
        let mut out = Vec::new();
        for s in self.nodes() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &(v, _) in &self.incident[comp[i]] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        out
    }

    /// Sub-network induced by the largest connected component. Only k-hop
    /// interference carries over; explicit pairs are rejected.
    pub fn largest_component(&self) -> Result<Self> {
        let k = match self.interference {
            Interference::KHop(k) => k,
            Interference::Explicit(_) => {
                return Err(Error::InvalidNetwork("cannot restrict explicit interference".into()))
            }
        };
        let keep = self.components().swap_remove(0);
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &n) in keep.iter().enumerate() {
            index[n] = i;
        }
        let links = self
            .links
            .iter()
            .filter(|l| index[l.a] != usize::MAX)
            .map(|l| (index[l.a], index[l.b], l.cap))
            .collect();
        SubstrateNetwork::new(
            keep.iter().map(|&n| self.names[n].clone()).collect(),
            keep.iter().map(|&n| self.cpu[n]).collect(),
            keep.iter().map(|&n| self.positions[n]).collect(),
            links,
            Interference::KHop(k),
        )
    }

    /// `"(A,C)"`-style label of a link.
    pub fn link_label(&self, l: LinkId) -> String {
        let link = &self.links[l];
        format!("({},{})", self.names[link.a], self.names[link.b])
    }
}
