use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{LinkId, NodeId, SubstrateNetwork};

/// Potential normalized load per substrate link: aggregate routed bandwidth
/// divided by capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadVector<S>(Vec<S>);

impl<S: Scalar> LoadVector<S> {
    pub fn zeros(links: usize) -> Self {
        LoadVector(vec![S::zero(); links])
    }

    pub fn from_vec(loads: Vec<S>) -> Self {
        LoadVector(loads)
    }

    /// Loads implied by per-link routed bandwidth.
    pub fn from_requirements(sn: &SubstrateNetwork<S>, req: &[S]) -> Self {
        LoadVector(req.iter().zip(sn.links()).map(|(&r, l)| r / l.cap).collect())
    }

    /// Loads of everything recorded in `ledger`.
    pub fn from_ledger(sn: &SubstrateNetwork<S>, ledger: &ResourceLedger<S>) -> Self {
        Self::from_requirements(sn, &ledger.allocated_bw)
    }

    /// Loads of `ledger` plus the bandwidth of one more embedding.
    pub fn with_candidate(
        sn: &SubstrateNetwork<S>,
        ledger: &ResourceLedger<S>,
        candidate: &Embedding<S>,
    ) -> Self {
        let mut req = ledger.allocated_bw.clone();
        for (&l, &bw) in candidate.bw_alloc() {
            req[l] = req[l] + bw;
        }
        Self::from_requirements(sn, &req)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Load of link `l`; links beyond the vector are unloaded.
    pub fn get(&self, l: LinkId) -> S {
        self.0.get(l).copied().unwrap_or_else(S::zero)
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn max(&self) -> S {
        self.0.iter().copied().fold(S::zero(), S::max)
    }

    pub fn mean(&self) -> S {
        if self.0.is_empty() {
            S::zero()
        } else {
            self.0.iter().copied().sum::<S>() / S::from_count(self.0.len())
        }
    }
}

/// Potential normalized loads of `sn` under a set of active embeddings.
pub fn potential_loads<'a, S: Scalar>(
    sn: &SubstrateNetwork<S>,
    active: impl IntoIterator<Item = &'a Embedding<S>>,
) -> Result<LoadVector<S>> {
    let mut req = vec![S::zero(); sn.link_count()];
    for e in active {
        for (&l, &bw) in e.bw_alloc() {
            let slot = req.get_mut(l).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "embedding of request {} references unknown link id {l}",
                    e.vn_id()
                ))
            })?;
            *slot = *slot + bw;
        }
    }
    Ok(LoadVector::from_requirements(sn, &req))
}

/// Residual CPU per substrate node and allocated bandwidth per link.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceLedger<S> {
    residual_cpu: Vec<S>,
    allocated_bw: Vec<S>,
}

impl<S: Scalar> ResourceLedger<S> {
    /// Ledger of an otherwise idle substrate.
    pub fn pristine(sn: &SubstrateNetwork<S>) -> Self {
        ResourceLedger {
            residual_cpu: sn.nodes().map(|n| sn.cpu(n)).collect(),
            allocated_bw: vec![S::zero(); sn.link_count()],
        }
    }

    /// Recomputes the ledger from scratch over `active`.
    pub fn recompute<'a>(
        sn: &SubstrateNetwork<S>,
        active: impl IntoIterator<Item = &'a Embedding<S>>,
    ) -> Self {
        let mut ledger = Self::pristine(sn);
        for e in active {
            ledger.commit(e);
        }
        ledger
    }

    pub fn residual_cpu(&self, n: NodeId) -> S {
        self.residual_cpu[n]
    }

    pub fn allocated_bw(&self, l: LinkId) -> S {
        self.allocated_bw[l]
    }

    pub fn allocated_bw_all(&self) -> &[S] {
        &self.allocated_bw
    }

    pub fn residual_bw(&self, sn: &SubstrateNetwork<S>, l: LinkId) -> S {
        sn.cap(l) - self.allocated_bw[l]
    }

    pub(crate) fn take_cpu(&mut self, n: NodeId, amount: S) {
        self.residual_cpu[n] = self.residual_cpu[n] - amount;
    }

    pub(crate) fn take_bw(&mut self, l: LinkId, amount: S) {
        self.allocated_bw[l] = self.allocated_bw[l] + amount;
    }

    pub fn commit(&mut self, e: &Embedding<S>) {
        for (&n, &c) in e.cpu_alloc() {
            self.residual_cpu[n] = self.residual_cpu[n] - c;
        }
        for (&l, &bw) in e.bw_alloc() {
            self.allocated_bw[l] = self.allocated_bw[l] + bw;
        }
    }

    pub fn release(&mut self, e: &Embedding<S>) {
        for (&n, &c) in e.cpu_alloc() {
            self.residual_cpu[n] = self.residual_cpu[n] + c;
        }
        for (&l, &bw) in e.bw_alloc() {
            self.allocated_bw[l] = self.allocated_bw[l] - bw;
        }
    }

    /// Whether every entry agrees with `other` within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        let close = |a: &[S], b: &[S]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (*x - *y).abs() <= tol)
        };
        close(&self.residual_cpu, &other.residual_cpu) && close(&self.allocated_bw, &other.allocated_bw)
    }

    /// Every residual cpu is nonnegative and every allocation within capacity.
    pub fn within_capacity(&self, sn: &SubstrateNetwork<S>) -> bool {
        let tol = S::tolerance();
        self.residual_cpu.iter().all(|&c| c >= -tol)
            && self
                .allocated_bw
                .iter()
                .zip(sn.links())
                .all(|(&a, l)| a <= l.cap + tol)
    }
}
