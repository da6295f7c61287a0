use std::cmp::Ordering;

use crate::baselines::{AlgorithmVariant, Coupling};
use crate::error::{Error, Result};
use crate::feasibility::{Checker, Verdict};
use crate::network::{LoadVector, NodeId, ResourceLedger, SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

use super::metric::sigma_with_ledger;
use super::paths::{shortest_path_tree, LinkWeight};
use super::sequence::{extended_remaining, ranked_nodes, vn_node_sequence};
use super::{EmbeddedPath, Embedding};

/// An embedding under construction, carrying a private copy of the ledger
/// that already reflects the resources this candidate has taken.
#[derive(Debug, Clone)]
pub struct PartialEmbedding<'a, S> {
    sn: &'a SubstrateNetwork<S>,
    vn: &'a VirtualNetworkRequest<S>,
    ledger: ResourceLedger<S>,
    node_map: Vec<Option<NodeId>>,
    paths: Vec<Option<EmbeddedPath>>,
    used: Vec<bool>,
}

impl<'a, S: Scalar> PartialEmbedding<'a, S> {
    pub fn new(sn: &'a SubstrateNetwork<S>, vn: &'a VirtualNetworkRequest<S>, ledger: &ResourceLedger<S>) -> Self {
        PartialEmbedding {
            sn,
            vn,
            ledger: ledger.clone(),
            node_map: vec![None; vn.node_count()],
            paths: vec![None; vn.links().len()],
            used: vec![false; sn.node_count()],
        }
    }

    pub fn host(&self, v: NodeId) -> Option<NodeId> {
        self.node_map[v]
    }

    /// Base ledger plus everything assigned so far.
    pub fn ledger(&self) -> &ResourceLedger<S> {
        &self.ledger
    }

    /// `s` is unused by this candidate and has CPU left for `v`.
    pub fn admits(&self, s: NodeId, v: NodeId) -> bool {
        !self.used[s] && self.ledger.residual_cpu(s) + S::tolerance() >= self.vn.cpu(v)
    }

    pub fn assign_node(&mut self, v: NodeId, s: NodeId) -> Result<()> {
        if self.node_map[v].is_some() {
            return Err(Error::InvalidParameter(format!("virtual node `{}` already placed", self.vn.name(v))));
        }
        if !self.admits(s, v) {
            return Err(Error::InvalidParameter(format!(
                "substrate node `{}` cannot host `{}`",
                self.sn.name(s),
                self.vn.name(v)
            )));
        }
        self.ledger.take_cpu(s, self.vn.cpu(v));
        self.used[s] = true;
        self.node_map[v] = Some(s);
        Ok(())
    }

    pub fn assign_path(&mut self, vlink: usize, path: EmbeddedPath) -> Result<()> {
        let vl = *self.vn.link(vlink);
        let (Some(x), Some(y)) = (self.node_map[vl.a], self.node_map[vl.b]) else {
            return Err(Error::InvalidParameter("virtual link endpoints not yet placed".into()));
        };
        let ends = (path.source(), path.target());
        if ends != (Some(x), Some(y)) && ends != (Some(y), Some(x)) {
            return Err(Error::InvalidParameter("path does not join the placed endpoints".into()));
        }
        if !self.path_fits(&path, vl.bw) {
            return Err(Error::InvalidParameter("path lacks residual capacity".into()));
        }
        for &l in &path.links {
            self.ledger.take_bw(l, vl.bw);
        }
        self.paths[vlink] = Some(path);
        Ok(())
    }

    fn path_fits(&self, path: &EmbeddedPath, bw: S) -> bool {
        path.links
            .iter()
            .all(|&l| self.ledger.allocated_bw(l) + bw <= self.sn.cap(l) + S::tolerance())
    }

    pub fn apply(&mut self, v: NodeId, placement: &Placement<S>) -> Result<()> {
        self.assign_node(v, placement.node)?;
        for (vlink, path) in &placement.paths {
            self.assign_path(*vlink, path.clone())?;
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Embedding<S>> {
        let node_map = self
            .node_map
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidParameter("unplaced virtual node".into()))?;
        let paths = self
            .paths
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidParameter("unrouted virtual link".into()))?;
        Embedding::new(self.sn, self.vn, node_map, paths)
    }
}

/// Where a virtual node goes and how its links to already-placed neighbors
/// are routed.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement<S> {
    pub node: NodeId,
    pub score: S,
    /// `(virtual link, substrate path)` for each link to a placed neighbor.
    pub paths: Vec<(usize, EmbeddedPath)>,
    /// Score of every admissible, reachable substrate node, by id.
    pub scores: Vec<(NodeId, S)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlacementFailure {
    /// No unused substrate node has the CPU and connectivity required.
    NoAdmissibleNode,
}

fn by_score<S: Scalar>(a: &(NodeId, S), b: &(NodeId, S)) -> Ordering {
    a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0))
}

/// Chooses the host of `next` minimizing the bandwidth-weighted distance to
/// the hosts of its placed neighbors, and routes the connecting links along
/// the witnessing shortest paths.
///
/// With no placed neighbor every node scores zero and the choice falls back
/// to the largest extended remaining resource.
pub fn place_next_node<S: Scalar>(
    partial: &PartialEmbedding<'_, S>,
    next: NodeId,
    weight: LinkWeight,
    alpha: S,
) -> Result<Placement<S>, PlacementFailure> {
    let (sn, vn) = (partial.sn, partial.vn);
    let placed: Vec<(NodeId, usize)> = vn
        .incident(next)
        .iter()
        .copied()
        .filter(|&(u, _)| partial.host(u).is_some())
        .collect();

    if placed.is_empty() {
        let node = ranked_nodes(sn, partial.ledger(), alpha)
            .into_iter()
            .find(|&s| partial.admits(s, next))
            .ok_or(PlacementFailure::NoAdmissibleNode)?;
        let scores = sn.nodes().filter(|&s| partial.admits(s, next)).map(|s| (s, S::zero())).collect();
        return Ok(Placement { node, score: S::zero(), paths: Vec::new(), scores });
    }

    let allocated = partial.ledger().allocated_bw_all();
    let trees: Vec<_> = placed
        .iter()
        .map(|&(u, l)| shortest_path_tree(sn, allocated, partial.host(u).unwrap(), vn.link(l).bw, weight))
        .collect();
    let mut scores: Vec<(NodeId, S)> = sn
        .nodes()
        .filter(|&s| partial.admits(s, next))
        .filter_map(|s| {
            placed
                .iter()
                .zip(&trees)
                .map(|(&(_, l), tree)| tree.distance(s).map(|d| vn.link(l).bw * d))
                .sum::<Option<S>>()
                .map(|score| (s, score))
        })
        .collect();
    let mut ranked = scores.clone();
    ranked.sort_by(by_score);

    // Links added in the same step may compete for capacity; route them in
    // order and reroute any witness path an earlier one has saturated.
    'candidates: for &(s, score) in &ranked {
        let mut alloc = allocated.to_vec();
        let mut paths = Vec::with_capacity(placed.len());
        for (&(u, l), tree) in placed.iter().zip(&trees) {
            let bw = vn.link(l).bw;
            let witness = tree.path(sn, s).expect("scored nodes are reachable");
            let fits = |p: &EmbeddedPath, alloc: &[S]| {
                p.links.iter().all(|&e| alloc[e] + bw <= sn.cap(e) + S::tolerance())
            };
            let path = if fits(&witness, &alloc) {
                witness
            } else {
                match shortest_path_tree(sn, &alloc, partial.host(u).unwrap(), bw, weight).path(sn, s) {
                    Some(p) => p,
                    None => continue 'candidates,
                }
            };
            for &e in &path.links {
                alloc[e] = alloc[e] + bw;
            }
            paths.push((l, path));
        }
        scores.sort_by_key(|&(s, _)| s);
        return Ok(Placement { node: s, score, paths, scores });
    }
    Err(PlacementFailure::NoAdmissibleNode)
}

/// A complete candidate embedding grown from one root.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<S> {
    pub root: NodeId,
    pub embedding: Embedding<S>,
    pub sigma: S,
}

fn route_all<S: Scalar>(partial: &mut PartialEmbedding<'_, S>, weight: LinkWeight) -> Option<()> {
    let (sn, vn) = (partial.sn, partial.vn);
    for (idx, vl) in vn.links().iter().enumerate() {
        let (x, y) = (partial.host(vl.a)?, partial.host(vl.b)?);
        let tree = shortest_path_tree(sn, partial.ledger().allocated_bw_all(), x, vl.bw, weight);
        let path = tree.path(sn, y)?;
        partial.assign_path(idx, path).ok()?;
    }
    Some(())
}

/// Grows one candidate from `root` following `sequence` under the coupling
/// and link weight of `variant`. `None` when some node or link cannot be
/// placed.
pub fn build_candidate<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    vn: &VirtualNetworkRequest<S>,
    sequence: &[NodeId],
    root: NodeId,
    variant: AlgorithmVariant,
    alpha: S,
) -> Option<Candidate<S>> {
    let mut partial = PartialEmbedding::new(sn, vn, ledger);
    let (&first, rest) = sequence.split_first()?;
    partial.assign_node(first, root).ok()?;
    let weight = variant.link_weight;
    match variant.coupling {
        Coupling::Full => {
            for &next in rest {
                let placement = place_next_node(&partial, next, weight, alpha).ok()?;
                partial.apply(next, &placement).ok()?;
            }
        }
        Coupling::Intermediate => {
            for &next in rest {
                // Proximity to the root only, over links able to carry the
                // node's largest incident demand.
                let need = vn.incident(next).iter().map(|&(_, l)| vn.link(l).bw).fold(S::zero(), S::max);
                let tree = shortest_path_tree(sn, partial.ledger().allocated_bw_all(), root, need, weight);
                let host = sn
                    .nodes()
                    .filter(|&s| partial.admits(s, next))
                    .filter_map(|s| tree.distance(s).map(|d| (s, d)))
                    .min_by(by_score)?
                    .0;
                partial.assign_node(next, host).ok()?;
            }
            route_all(&mut partial, weight)?;
        }
        Coupling::None => {
            for &next in rest {
                let host = sn
                    .nodes()
                    .filter(|&s| partial.admits(s, next))
                    .map(|s| (s, extended_remaining(sn, partial.ledger(), s, alpha).expect("in range")))
                    .min_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0)))?
                    .0;
                partial.assign_node(next, host).ok()?;
            }
            route_all(&mut partial, weight)?;
        }
    }
    let embedding = partial.finish().ok()?;
    let sigma = sigma_with_ledger(sn, ledger, &embedding);
    Some(Candidate { root, embedding, sigma })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedParams<S> {
    /// Number of roots, hence candidates, tried per request.
    pub k: usize,
    /// Weight of bandwidth relative to CPU.
    pub alpha: S,
    pub variant: AlgorithmVariant,
}

/// Outcome of embedding one request.
#[derive(Debug, Clone, PartialEq)]
pub enum EmbedDecision<S> {
    Accepted {
        candidate: Candidate<S>,
        verdict: Verdict,
        candidates_built: usize,
        candidates_checked: usize,
    },
    Rejected {
        candidates_built: usize,
        candidates_checked: usize,
    },
}

impl<S> EmbedDecision<S> {
    pub fn embedding(&self) -> Option<&Embedding<S>> {
        match self {
            EmbedDecision::Accepted { candidate, .. } => Some(&candidate.embedding),
            EmbedDecision::Rejected { .. } => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, EmbedDecision::Accepted { .. })
    }
}

/// Builds up to `k` candidates from the best admissible roots, ranks them
/// by ascending metric and returns the first one whose combined load (the
/// ledger plus the candidate) passes `checker`.
pub fn embed<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    vn: &VirtualNetworkRequest<S>,
    params: &EmbedParams<S>,
    checker: &Checker,
) -> Result<EmbedDecision<S>> {
    let sequence = vn_node_sequence(vn, params.alpha)?;
    let Some(&first) = sequence.first() else {
        // A request without nodes embeds trivially.
        let embedding = Embedding::new(sn, vn, Vec::new(), Vec::new())?;
        let sigma = sigma_with_ledger(sn, ledger, &embedding);
        let verdict = checker.check(sn.conflict_graph(), &LoadVector::from_ledger(sn, ledger))?;
        return Ok(EmbedDecision::Accepted {
            candidate: Candidate { root: 0, embedding, sigma },
            verdict,
            candidates_built: 0,
            candidates_checked: 1,
        });
    };
    let roots: Vec<NodeId> = ranked_nodes(sn, ledger, params.alpha)
        .into_iter()
        .filter(|&s| ledger.residual_cpu(s) + S::tolerance() >= vn.cpu(first))
        .take(params.k)
        .collect();
    let mut candidates: Vec<Candidate<S>> = roots
        .iter()
        .filter_map(|&root| build_candidate(sn, ledger, vn, &sequence, root, params.variant, params.alpha))
        .collect();
    let built = candidates.len();
    candidates.sort_by(|a, b| a.sigma.partial_cmp(&b.sigma).unwrap_or(Ordering::Equal));
    let mut checked = 0;
    for candidate in candidates {
        checked += 1;
        let loads = LoadVector::with_candidate(sn, ledger, &candidate.embedding);
        let verdict = checker.check(sn.conflict_graph(), &loads)?;
        if verdict.feasible {
            return Ok(EmbedDecision::Accepted {
                candidate,
                verdict,
                candidates_built: built,
                candidates_checked: checked,
            });
        }
    }
    Ok(EmbedDecision::Rejected { candidates_built: built, candidates_checked: checked })
}

/// The interference-aware joint embedding (full coupling, influence weight).
pub fn wem_embed<S: Scalar>(
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    vn: &VirtualNetworkRequest<S>,
    k: usize,
    alpha: S,
    checker: &Checker,
) -> Result<EmbedDecision<S>> {
    let params = EmbedParams { k, alpha, variant: AlgorithmVariant::WEM };
    embed(sn, ledger, vn, &params, checker)
}

