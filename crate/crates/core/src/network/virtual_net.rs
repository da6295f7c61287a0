use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{is_connected, NodeId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirtualLink<S> {
    pub a: NodeId,
    pub b: NodeId,
    pub bw: S,
}

impl<S> VirtualLink<S> {
    pub fn other(&self, n: NodeId) -> NodeId {
        if n == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// A virtual network request: node CPU demands, link bandwidth demands,
/// lifetime in windows and arrival window.
#[derive(Debug, Clone)]
pub struct VirtualNetworkRequest<S> {
    id: u64,
    names: Vec<String>,
    cpu: Vec<S>,
    links: Vec<VirtualLink<S>>,
    incident: Vec<Vec<(NodeId, usize)>>,
    duration: u32,
    arrival_window: u64,
}

impl<S: Scalar> VirtualNetworkRequest<S> {
    /// Validates demands and structure. Connectivity is not required here;
    /// see [`VirtualNetworkRequest::ensure_connected`].
    pub fn new(
        id: u64,
        names: Vec<String>,
        cpu: Vec<S>,
        links: Vec<(NodeId, NodeId, S)>,
        duration: u32,
        arrival_window: u64,
    ) -> Result<Self> {
        let n = names.len();
        if cpu.len() != n {
            return Err(Error::InvalidNetwork(format!(
                "request {id}: {n} names but {} cpu values",
                cpu.len()
            )));
        }
        if duration == 0 {
            return Err(Error::InvalidNetwork(format!("request {id}: duration must be >= 1")));
        }
        for (i, c) in cpu.iter().enumerate() {
            if !c.is_finite() || *c <= S::zero() {
                return Err(Error::InvalidNetwork(format!(
                    "request {id}: node `{}` cpu must be positive, got {c}",
                    names[i]
                )));
            }
        }
        let mut incident = vec![Vec::new(); n];
        let mut vlinks = Vec::with_capacity(links.len());
        for (idx, (u, v, bw)) in links.into_iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidNetwork(format!(
                    "request {id}: invalid link ({u}, {v})"
                )));
            }
            if !bw.is_finite() || bw <= S::zero() {
                return Err(Error::InvalidNetwork(format!(
                    "request {id}: link ({}, {}) bandwidth must be positive, got {bw}",
                    names[u], names[v]
                )));
            }
            if incident[u].iter().any(|&(w, _)| w == v) {
                return Err(Error::InvalidNetwork(format!(
                    "request {id}: duplicate link ({}, {})",
                    names[u], names[v]
                )));
            }
            incident[u].push((v, idx));
            incident[v].push((u, idx));
            vlinks.push(VirtualLink { a: u.min(v), b: u.max(v), bw });
        }
        for adj in &mut incident {
            adj.sort_unstable();
        }
        Ok(VirtualNetworkRequest {
            id,
            names,
            cpu,
            links: vlinks,
            incident,
            duration,
            arrival_window,
        })
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected(self.id))
        }
    }

    pub fn is_connected(&self) -> bool {
        is_connected(&self.incident)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
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

    pub fn links(&self) -> &[VirtualLink<S>] {
        &self.links
    }

    pub fn link(&self, idx: usize) -> &VirtualLink<S> {
        &self.links[idx]
    }

    /// `(neighbor, link index)` pairs of `n`, sorted by neighbor.
    pub fn incident(&self, n: NodeId) -> &[(NodeId, usize)] {
        &self.incident[n]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<(NodeId, usize)>] {
        &self.incident
    }

    pub fn link_between(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.incident
            .get(u)?
            .iter()
            .find_map(|&(w, l)| (w == v).then_some(l))
    }

    pub fn duration(&self) -> u32 {
        self.duration
    }

    pub fn arrival_window(&self) -> u64 {
        self.arrival_window
    }

    /// Window at which an embedding of this request is released.
    pub fn expiry_window(&self) -> u64 {
        self.arrival_window + u64::from(self.duration)
    }

    /// Copy of this request stamped with a new id and arrival window.
    pub fn restamped(&self, id: u64, arrival_window: u64) -> Self {
        VirtualNetworkRequest { id, arrival_window, ..self.clone() }
    }

    pub fn total_cpu(&self) -> S {
        self.cpu.iter().copied().sum()
    }

    pub fn total_bw(&self) -> S {
        self.links.iter().map(|l| l.bw).sum()
    }
}
