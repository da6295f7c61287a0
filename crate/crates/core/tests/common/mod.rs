#![allow(dead_code)]

use std::path::PathBuf;

use wivne_core::network::io::{read_loads, read_request, read_substrate};
use wivne_core::{EmbeddedPath, Loads, Mapping, Request, Substrate};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn triangle() -> (Substrate, Request) {
    (
        read_substrate(&data("triangle_substrate.toml")).unwrap(),
        read_request(&data("triangle_request.toml")).unwrap(),
    )
}

pub fn two_clique() -> (Substrate, Request, Loads) {
    let sn: Substrate = read_substrate(&data("two_clique_substrate.toml")).unwrap();
    let loads = read_loads(&sn, &data("two_clique_loads.toml")).unwrap();
    (sn, read_request(&data("two_clique_request.toml")).unwrap(), loads)
}

pub fn node(sn: &Substrate, name: &str) -> usize {
    sn.node_by_name(name).unwrap()
}

pub fn vnode(vn: &Request, name: &str) -> usize {
    vn.node_by_name(name).unwrap()
}

pub fn link(sn: &Substrate, u: &str, v: &str) -> usize {
    sn.link_between(node(sn, u), node(sn, v)).unwrap()
}

pub fn path(sn: &Substrate, names: &[&str]) -> EmbeddedPath {
    EmbeddedPath::from_nodes(sn, names.iter().map(|n| node(sn, n)).collect()).unwrap()
}

/// Builds an embedding from `(vn node, sn node)` pairs and one substrate
/// node path per virtual link, in request link order.
pub fn mapping(sn: &Substrate, vn: &Request, nodes: &[(&str, &str)], paths: &[&[&str]]) -> Mapping {
    let mut map = vec![usize::MAX; vn.node_count()];
    for (v, s) in nodes {
        map[vnode(vn, v)] = node(sn, s);
    }
    Mapping::new(sn, vn, map, paths.iter().map(|p| path(sn, p)).collect()).unwrap()
}

/// Figure-given influence weights of the triangle substrate.
pub const TRIANGLE_WEIGHTS: [(&str, &str, f64); 6] = [
    ("A", "B", 0.067),
    ("A", "C", 0.1),
    ("B", "C", 0.04),
    ("C", "D", 0.08),
    ("D", "E", 0.038),
    ("A", "E", 0.08),
];
