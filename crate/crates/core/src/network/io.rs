//! TOML file formats for substrates, requests and link loads.
//!
//! Substrate:
//!
//! ```toml
//! interference_hops = 1        # optional, default 2
//! [[nodes]]
//! id = "A"
//! cpu = 100.0
//! x = 0.0                      # optional
//! y = 0.0                      # optional
//! [[links]]
//! u = "A"
//! v = "C"
//! cap = 50.0
//! [[interference]]             # optional; overrides interference_hops
//! a = ["A", "C"]
//! b = ["C", "D"]
//! ```
//!
//! Virtual network (a requests file holds a `[[requests]]` array of these):
//!
//! ```toml
//! id = 0
//! duration = 1
//! arrival_window = 0
//! [[nodes]]
//! id = "a"
//! cpu = 10.0
//! [[links]]
//! u = "a"
//! v = "b"
//! bw = 5.0
//! ```
//!
//! Loads: `[[loads]]` entries with `u`, `v` and either `bw` (routed
//! bandwidth, divided by capacity) or `lambda` (normalized load).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Interference, LoadVector, SubstrateNetwork, VirtualNetworkRequest};

pub const DEFAULT_INTERFERENCE_HOPS: u32 = 2;

#[derive(Debug, Serialize, Deserialize)]
struct NodeRecord {
    id: String,
    cpu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SubstrateLinkRecord {
    u: String,
    v: String,
    cap: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct InterferenceRecord {
    a: [String; 2],
    b: [String; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubstrateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interference_hops: Option<u32>,
    #[serde(default)]
    nodes: Vec<NodeRecord>,
    #[serde(default)]
    links: Vec<SubstrateLinkRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    interference: Vec<InterferenceRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VirtualLinkRecord {
    u: String,
    v: String,
    bw: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RequestRecord {
    id: u64,
    #[serde(default = "one")]
    duration: u32,
    #[serde(default)]
    arrival_window: u64,
    #[serde(default)]
    nodes: Vec<NodeRecord>,
    #[serde(default)]
    links: Vec<VirtualLinkRecord>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RequestsFile {
    #[serde(default)]
    requests: Vec<RequestRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LoadRecord {
    u: String,
    v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bw: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoadsFile {
    #[serde(default)]
    loads: Vec<LoadRecord>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> Result<String> {
    toml::to_string(value).map_err(|e| Error::Parse(e.to_string()))
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownNode(name.to_string()))
}

pub fn substrate_from_str<S: Scalar>(text: &str) -> Result<SubstrateNetwork<S>> {
    let file: SubstrateFile = parse(text)?;
    let names: Vec<String> = file.nodes.iter().map(|n| n.id.clone()).collect();
    let cpu = file.nodes.iter().map(|n| S::lit(n.cpu)).collect();
    let positions = file
        .nodes
        .iter()
        .map(|n| (S::lit(n.x.unwrap_or(0.0)), S::lit(n.y.unwrap_or(0.0))))
        .collect();
    let links = file
        .links
        .iter()
        .map(|l| Ok((lookup(&names, &l.u)?, lookup(&names, &l.v)?, S::lit(l.cap))))
        .collect::<Result<Vec<_>>>()?;
    let interference = if file.interference.is_empty() {
        Interference::KHop(file.interference_hops.unwrap_or(DEFAULT_INTERFERENCE_HOPS))
    } else {
        let pairs = file
            .interference
            .iter()
            .map(|r| {
                Ok((
                    (lookup(&names, &r.a[0])?, lookup(&names, &r.a[1])?),
                    (lookup(&names, &r.b[0])?, lookup(&names, &r.b[1])?),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Interference::Explicit(pairs)
    };
    SubstrateNetwork::new(names, cpu, positions, links, interference)
}

pub fn substrate_to_string<S: Scalar>(sn: &SubstrateNetwork<S>) -> Result<String> {
    let name = |n: usize| sn.name(n).to_string();
    let (hops, interference) = match sn.interference() {
        Interference::KHop(k) => (Some(*k), Vec::new()),
        Interference::Explicit(_) => {
            let cg = sn.conflict_graph();
            let mut pairs = Vec::new();
            for i in 0..cg.vertex_count() {
                for &j in cg.neighbors(i).iter().filter(|&&j| j > i) {
                    let (li, lj) = (sn.link(i), sn.link(j));
                    pairs.push(InterferenceRecord {
                        a: [name(li.a), name(li.b)],
                        b: [name(lj.a), name(lj.b)],
                    });
                }
            }
            (None, pairs)
        }
    };
    let file = SubstrateFile {
        interference_hops: hops,
        nodes: sn
            .nodes()
            .map(|n| {
                let (x, y) = sn.position(n);
                NodeRecord { id: name(n), cpu: sn.cpu(n).as_f64(), x: Some(x.as_f64()), y: Some(y.as_f64()) }
            })
            .collect(),
        links: sn
            .links()
            .iter()
            .map(|l| SubstrateLinkRecord { u: name(l.a), v: name(l.b), cap: l.cap.as_f64() })
            .collect(),
        interference,
    };
    render(&file)
}

fn request_from_record<S: Scalar>(r: RequestRecord) -> Result<VirtualNetworkRequest<S>> {
    let names: Vec<String> = r.nodes.iter().map(|n| n.id.clone()).collect();
    let cpu = r.nodes.iter().map(|n| S::lit(n.cpu)).collect();
    let links = r
        .links
        .iter()
        .map(|l| Ok((lookup(&names, &l.u)?, lookup(&names, &l.v)?, S::lit(l.bw))))
        .collect::<Result<Vec<_>>>()?;
    let vn = VirtualNetworkRequest::new(r.id, names, cpu, links, r.duration, r.arrival_window)?;
    vn.ensure_connected()?;
    Ok(vn)
}

fn request_to_record<S: Scalar>(vn: &VirtualNetworkRequest<S>) -> RequestRecord {
    RequestRecord {
        id: vn.id(),
        duration: vn.duration(),
        arrival_window: vn.arrival_window(),
        nodes: vn
            .nodes()
            .map(|n| NodeRecord { id: vn.name(n).to_string(), cpu: vn.cpu(n).as_f64(), x: None, y: None })
            .collect(),
        links: vn
            .links()
            .iter()
            .map(|l| VirtualLinkRecord {
                u: vn.name(l.a).to_string(),
                v: vn.name(l.b).to_string(),
                bw: l.bw.as_f64(),
            })
            .collect(),
    }
}

/// Parses a single request; the request must be connected.
pub fn request_from_str<S: Scalar>(text: &str) -> Result<VirtualNetworkRequest<S>> {
    request_from_record(parse(text)?)
}

pub fn request_to_string<S: Scalar>(vn: &VirtualNetworkRequest<S>) -> Result<String> {
    render(&request_to_record(vn))
}

pub fn requests_from_str<S: Scalar>(text: &str) -> Result<Vec<VirtualNetworkRequest<S>>> {
    let file: RequestsFile = parse(text)?;
    file.requests.into_iter().map(request_from_record).collect()
}

pub fn requests_to_string<S: Scalar>(vns: &[VirtualNetworkRequest<S>]) -> Result<String> {
    render(&RequestsFile { requests: vns.iter().map(request_to_record).collect() })
}

/// Parses a loads file against `sn`. Links not mentioned carry zero load.
pub fn loads_from_str<S: Scalar>(sn: &SubstrateNetwork<S>, text: &str) -> Result<LoadVector<S>> {
    let file: LoadsFile = parse(text)?;
    let mut loads = vec![S::zero(); sn.link_count()];
    for r in file.loads {
        let u = sn.node_by_name(&r.u).ok_or_else(|| Error::UnknownNode(r.u.clone()))?;
        let v = sn.node_by_name(&r.v).ok_or_else(|| Error::UnknownNode(r.v.clone()))?;
        let l = sn
            .link_between(u, v)
            .ok_or_else(|| Error::UnknownLink(r.u.clone(), r.v.clone()))?;
        let lambda = match (r.bw, r.lambda) {
            (Some(bw), None) => S::lit(bw) / sn.cap(l),
            (None, Some(lambda)) => S::lit(lambda),
            _ => {
                return Err(Error::Parse(format!(
                    "load entry ({}, {}) needs exactly one of `bw` or `lambda`",
                    r.u, r.v
                )))
            }
        };
        if !lambda.is_finite() || lambda < S::zero() {
            return Err(Error::Parse(format!("negative load on ({}, {})", r.u, r.v)));
        }
        loads[l] = loads[l] + lambda;
    }
    Ok(LoadVector::from_vec(loads))
}

pub fn loads_to_string<S: Scalar>(sn: &SubstrateNetwork<S>, loads: &LoadVector<S>) -> Result<String> {
    let file = LoadsFile {
        loads: sn
            .links()
            .iter()
            .enumerate()
            .filter(|(l, _)| loads.get(*l) > S::zero())
            .map(|(l, link)| LoadRecord {
                u: sn.name(link.a).to_string(),
                v: sn.name(link.b).to_string(),
                bw: None,
                lambda: Some(loads.get(l).as_f64()),
            })
            .collect(),
    };
    render(&file)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn read_substrate<S: Scalar>(path: &Path) -> Result<SubstrateNetwork<S>> {
    substrate_from_str(&read(path)?)
}

pub fn read_request<S: Scalar>(path: &Path) -> Result<VirtualNetworkRequest<S>> {
    request_from_str(&read(path)?)
}

pub fn read_requests<S: Scalar>(path: &Path) -> Result<Vec<VirtualNetworkRequest<S>>> {
    requests_from_str(&read(path)?)
}

pub fn read_loads<S: Scalar>(sn: &SubstrateNetwork<S>, path: &Path) -> Result<LoadVector<S>> {
    loads_from_str(sn, &read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = r#"
interference_hops = 1
[[nodes]]
id = "A"
cpu = 100
[[nodes]]
id = "B"
cpu = 100
[[nodes]]
id = "C"
cpu = 100
[[links]]
u = "A"
v = "C"
cap = 50
[[links]]
u = "A"
v = "B"
cap = 50
"#;

    #[test]
    fn parses_integers_as_reals_and_sorts_links() {
        let sn: SubstrateNetwork<f64> = substrate_from_str(FIG2).unwrap();
        assert_eq!(sn.link_count(), 2);
        assert_eq!(sn.link_label(0), "(A,B)");
        assert!(sn.conflict_graph().adjacent(0, 1));
    }

    #[test]
    fn unknown_node_in_link() {
        let bad = FIG2.replace("v = \"B\"", "v = \"Z\"");
        assert!(matches!(substrate_from_str::<f64>(&bad), Err(Error::UnknownNode(n)) if n == "Z"));
    }

    #[test]
    fn explicit_interference_overrides_hops() {
        let text = format!("{FIG2}\n[[interference]]\na = [\"A\", \"B\"]\nb = [\"A\", \"C\"]\n");
        let sn: SubstrateNetwork<f64> = substrate_from_str(&text).unwrap();
        assert!(matches!(sn.interference(), Interference::Explicit(_)));
        let back: SubstrateNetwork<f64> = substrate_from_str(&substrate_to_string(&sn).unwrap()).unwrap();
        assert_eq!(back.conflict_graph(), sn.conflict_graph());
    }

    #[test]
    fn loads_need_one_field() {
        let sn: SubstrateNetwork<f64> = substrate_from_str(FIG2).unwrap();
        let loads = loads_from_str(&sn, "[[loads]]\nu = \"C\"\nv = \"A\"\nbw = 30\n").unwrap();
        assert_eq!(loads.get(1), 0.6);
        assert!(loads_from_str(&sn, "[[loads]]\nu = \"A\"\nv = \"C\"\n").is_err());
        assert!(loads_from_str(&sn, "[[loads]]\nu = \"B\"\nv = \"C\"\nbw = 1\n").is_err());
    }

    #[test]
    fn disconnected_request_rejected() {
        let text = "id = 1\n[[nodes]]\nid = \"a\"\ncpu = 1\n[[nodes]]\nid = \"b\"\ncpu = 1\n";
        assert!(matches!(request_from_str::<f64>(text), Err(Error::Disconnected(1))));
    }
}
