use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

use super::{EmbeddedPath, Embedding};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub vn: String,
    pub sn: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathEntry {
    pub u: String,
    pub v: String,
    pub bw: f64,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpuEntry {
    pub sn: String,
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BwEntry {
    pub u: String,
    pub v: String,
    pub amount: f64,
}

/// Name-based text record of an embedding, for logs and replay.
///
/// ```toml
/// vn_id = 0
/// sigma = 1.101
/// [[nodes]]
/// vn = "a"
/// sn = "C"
/// [[links]]
/// u = "a"
/// v = "c"
/// bw = 10.0
/// path = ["C", "B"]
/// [[cpu]]
/// sn = "C"
/// amount = 10.0
/// [[bw]]
/// u = "B"
/// v = "C"
/// amount = 10.0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub vn_id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    pub nodes: Vec<NodeEntry>,
    #[serde(default)]
    pub links: Vec<PathEntry>,
    #[serde(default)]
    pub cpu: Vec<CpuEntry>,
    #[serde(default)]
    pub bw: Vec<BwEntry>,
}

impl EmbeddingRecord {
    pub fn new<S: Scalar>(
        sn: &SubstrateNetwork<S>,
        vn: &VirtualNetworkRequest<S>,
        e: &Embedding<S>,
        sigma: Option<S>,
    ) -> Self {
        EmbeddingRecord {
            vn_id: e.vn_id(),
            sigma: sigma.map(Scalar::as_f64),
            nodes: vn
                .nodes()
                .map(|v| NodeEntry { vn: vn.name(v).into(), sn: sn.name(e.host(v)).into() })
                .collect(),
            links: vn
                .links()
                .iter()
                .zip(e.paths())
                .map(|(vl, p)| PathEntry {
                    u: vn.name(vl.a).into(),
                    v: vn.name(vl.b).into(),
                    bw: vl.bw.as_f64(),
                    path: p.nodes.iter().map(|&n| sn.name(n).to_string()).collect(),
                })
                .collect(),
            cpu: e
                .cpu_alloc()
                .iter()
                .map(|(&n, &c)| CpuEntry { sn: sn.name(n).into(), amount: c.as_f64() })
                .collect(),
            bw: e
                .bw_alloc()
                .iter()
                .map(|(&l, &b)| {
                    let link = sn.link(l);
                    BwEntry { u: sn.name(link.a).into(), v: sn.name(link.b).into(), amount: b.as_f64() }
                })
                .collect(),
        }
    }

    /// Rebuilds the embedding against `sn` and `vn`; allocations are
    /// recomputed and must agree with the recorded ones.
    pub fn resolve<S: Scalar>(&self, sn: &SubstrateNetwork<S>, vn: &VirtualNetworkRequest<S>) -> Result<Embedding<S>> {
        if self.vn_id != vn.id() {
            return Err(Error::Parse(format!("record is for request {}, not {}", self.vn_id, vn.id())));
        }
        let sn_node = |name: &str| sn.node_by_name(name).ok_or_else(|| Error::UnknownNode(name.into()));
        let mut node_map = vec![usize::MAX; vn.node_count()];
        for entry in &self.nodes {
            let v = vn.node_by_name(&entry.vn).ok_or_else(|| Error::UnknownNode(entry.vn.clone()))?;
            node_map[v] = sn_node(&entry.sn)?;
        }
        if node_map.contains(&usize::MAX) {
            return Err(Error::Parse("record does not place every virtual node".into()));
        }
        let mut paths = vec![None; vn.links().len()];
        for entry in &self.links {
            let u = vn.node_by_name(&entry.u).ok_or_else(|| Error::UnknownNode(entry.u.clone()))?;
            let v = vn.node_by_name(&entry.v).ok_or_else(|| Error::UnknownNode(entry.v.clone()))?;
            let idx = vn
                .link_between(u, v)
                .ok_or_else(|| Error::UnknownLink(entry.u.clone(), entry.v.clone()))?;
            let nodes = entry.path.iter().map(|n| sn_node(n)).collect::<Result<Vec<_>>>()?;
            paths[idx] = Some(EmbeddedPath::from_nodes(sn, nodes)?);
        }
        let paths = paths
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("record does not route every virtual link".into()))?;
        let e = Embedding::new(sn, vn, node_map, paths)?;
        let recorded = EmbeddingRecord::new(sn, vn, &e, None::<S>);
        if !self.bw.is_empty() && recorded.bw != self.bw || !self.cpu.is_empty() && recorded.cpu != self.cpu {
            return Err(Error::Parse("recorded allocations disagree with the mapping".into()));
        }
        Ok(e)
    }

    pub fn to_text(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
