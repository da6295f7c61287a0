//! Substrate and virtual network graphs, interference, resource accounting
//! and seeded generators.

mod conflict;
pub mod generate;
pub mod io;
mod resources;
mod substrate;
mod virtual_net;

pub use conflict::{build_conflict_graph, ConflictGraph};
pub use resources::{potential_loads, LoadVector, ResourceLedger};
pub use substrate::{Interference, SubstrateLink, SubstrateNetwork};
pub use virtual_net::{VirtualLink, VirtualNetworkRequest};

/// Index of a node inside its network. Tie-breaks compare these indices.
pub type NodeId = usize;
/// Index of a substrate link; also the conflict-graph vertex id.
pub type LinkId = usize;

/// Breadth-first hop distances from `src` over an adjacency list of
/// `(neighbor, link)` pairs. Unreachable nodes get `usize::MAX`.
pub fn hop_distances(adj: &[Vec<(NodeId, LinkId)>], src: NodeId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub(crate) fn is_connected(adj: &[Vec<(NodeId, LinkId)>]) -> bool {
    adj.is_empty() || hop_distances(adj, 0).iter().all(|&d| d != usize::MAX)
}
