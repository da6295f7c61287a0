use crate::scalar::Scalar;

use super::{hop_distances, LinkId, SubstrateNetwork};

/// Link-interference graph: one vertex per substrate link, an edge between
/// every pair of interfering links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<LinkId>>,
}

impl ConflictGraph {
    pub fn empty(vertices: usize) -> Self {
        ConflictGraph { adjacency: vec![Vec::new(); vertices] }
    }

    /// Builds a graph from unordered vertex pairs. Self-pairs and duplicates
    /// are dropped.
    pub fn from_pairs(vertices: usize, pairs: impl IntoIterator<Item = (LinkId, LinkId)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertices];
        for (i, j) in pairs {
            assert!(i < vertices && j < vertices, "conflict pair out of range");
            if i != j {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }
        ConflictGraph { adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: LinkId) -> &[LinkId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: LinkId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn adjacent(&self, i: LinkId, j: LinkId) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Subgraph induced by `keep` (in the given order); vertex `k` of the
    /// result corresponds to `keep[k]`.
    pub fn induced(&self, keep: &[LinkId]) -> ConflictGraph {
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (k, &v) in keep.iter().enumerate() {
            position[v] = k;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                let mut adj: Vec<_> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (position[w] != usize::MAX).then_some(position[w]))
                    .collect();
                adj.sort_unstable();
                adj
            })
            .collect();
        ConflictGraph { adjacency }
    }
}

/// Derives the conflict graph of `sn` under the `k`-hop interference model:
/// two distinct links are adjacent iff some endpoint of one is within
/// `k - 1` hops of some endpoint of the other. `k = 0` means no interference.
pub fn build_conflict_graph<S: Scalar>(sn: &SubstrateNetwork<S>, k: u32) -> ConflictGraph {
    let m = sn.link_count();
    if k == 0 {
        return ConflictGraph::empty(m);
    }
    let reach = (k - 1) as usize;
    let dist: Vec<Vec<usize>> = sn.nodes().map(|n| hop_distances(sn.adjacency(), n)).collect();
    let mut pairs = Vec::new();
    for i in 0..m {
        let li = sn.link(i);
        // Nodes within `reach` hops of either endpoint of `i`.
        let close = |n: usize| dist[li.a][n] <= reach || dist[li.b][n] <= reach;
        for j in (i + 1)..m {
            let lj = sn.link(j);
            if close(lj.a) || close(lj.b) {
                pairs.push((i, j));
            }
        }
    }
    ConflictGraph::from_pairs(m, pairs)
}
