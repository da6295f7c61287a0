//! Seeded generators for substrates and virtual network requests.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)` (crate
//! `rand_chacha` 0.3), so outputs are stable across builds and platforms
//! for a given parameter set and seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{is_connected, Interference, NodeId, SubstrateNetwork, VirtualNetworkRequest};

/// Maximum number of draws when resampling a random VN until connected.
pub const MAX_CONNECT_ATTEMPTS: usize = 1000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

fn check_interval(what: &str, (lo, hi): (f64, f64), positive: bool) -> Result<()> {
    let ok = lo.is_finite() && hi.is_finite() && lo <= hi && if positive { lo > 0.0 } else { lo >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} interval [{lo}, {hi}] is invalid")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomTopologyParams {
    pub nodes: usize,
    /// Side of the square deployment area.
    pub side: f64,
    /// Per-node transmission range interval.
    pub range: (f64, f64),
    /// Interval for node CPU and link capacity.
    pub resources: (f64, f64),
    pub interference_hops: u32,
}

impl Default for RandomTopologyParams {
    fn default() -> Self {
        RandomTopologyParams {
            nodes: 50,
            side: 100.0,
            range: (15.0, 30.0),
            resources: (100.0, 300.0),
            interference_hops: 2,
        }
    }
}

/// Places nodes uniformly on the square, draws each node's range, and links
/// two nodes when each lies within the other's range. Disconnected results
/// are returned as-is.
pub fn generate_random_topology<S: Scalar>(
    params: &RandomTopologyParams,
    seed: u64,
) -> Result<SubstrateNetwork<S>> {
    if params.nodes == 0 {
        return Err(Error::InvalidParameter("substrate needs at least one node".into()));
    }
    check_interval("range", params.range, true)?;
    check_interval("resource", params.resources, false)?;
    if !(params.side > 0.0) {
        return Err(Error::InvalidParameter("side must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let n = params.nodes;
    let pos: Vec<(f64, f64)> =
        (0..n).map(|_| (rng.gen_range(0.0..=params.side), rng.gen_range(0.0..=params.side))).collect();
    let range: Vec<f64> = (0..n).map(|_| uniform(&mut rng, params.range)).collect();
    let cpu: Vec<S> = (0..n).map(|_| S::lit(uniform(&mut rng, params.resources))).collect();
    let mut links = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let d = (pos[u].0 - pos[v].0).hypot(pos[u].1 - pos[v].1);
            if d <= range[u] && d <= range[v] {
                links.push((u, v, S::lit(uniform(&mut rng, params.resources))));
            }
        }
    }
    SubstrateNetwork::new(
        (0..n).map(|i| format!("n{i}")).collect(),
        cpu,
        pos.into_iter().map(|(x, y)| (S::lit(x), S::lit(y))).collect(),
        links,
        Interference::KHop(params.interference_hops),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridTopologyParams {
    pub width: usize,
    pub height: usize,
    pub spacing: f64,
    pub resources: (f64, f64),
    pub interference_hops: u32,
}

impl Default for GridTopologyParams {
    fn default() -> Self {
        GridTopologyParams {
            width: 7,
            height: 7,
            spacing: 100.0 / 7.0,
            resources: (100.0, 300.0),
            interference_hops: 2,
        }
    }
}

/// 4-neighbor lattice; node `(x, y)` has index `y * width + x`.
pub fn generate_grid_topology<S: Scalar>(
    params: &GridTopologyParams,
    seed: u64,
) -> Result<SubstrateNetwork<S>> {
    let (w, h) = (params.width, params.height);
    if w == 0 || h == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be >= 1".into()));
    }
    check_interval("resource", params.resources, false)?;
    let mut rng = rng_from_seed(seed);
    let n = w * h;
    let cpu: Vec<S> = (0..n).map(|_| S::lit(uniform(&mut rng, params.resources))).collect();
    let mut links = Vec::with_capacity(2 * n);
    for y in 0..h {
        for x in 0..w {
            let id = y * w + x;
            if x + 1 < w {
                links.push((id, id + 1, S::lit(uniform(&mut rng, params.resources))));
            }
            if y + 1 < h {
                links.push((id, id + w, S::lit(uniform(&mut rng, params.resources))));
            }
        }
    }
    let positions = (0..n)
        .map(|id| {
            let (x, y) = (id % w, id / w);
            (S::lit(x as f64 * params.spacing), S::lit(y as f64 * params.spacing))
        })
        .collect();
    SubstrateNetwork::new(
        (0..n).map(|i| format!("n{i}")).collect(),
        cpu,
        positions,
        links,
        Interference::KHop(params.interference_hops),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VnShape {
    Random,
    Star,
    Tree,
}

impl std::str::FromStr for VnShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(VnShape::Random),
            "star" => Ok(VnShape::Star),
            "tree" => Ok(VnShape::Tree),
            other => Err(Error::Parse(format!("unknown VN shape `{other}`"))),
        }
    }
}

impl std::fmt::Display for VnShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VnShape::Random => "random",
            VnShape::Star => "star",
            VnShape::Tree => "tree",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VnParams {
    pub nodes: (usize, usize),
    /// Interval from which each request draws its pairwise link probability.
    pub connect_prob: (f64, f64),
    /// Interval for every CPU and bandwidth demand.
    pub requirement: (f64, f64),
    pub shape: VnShape,
    /// Mean of the exponential holding time, in windows.
    pub mean_duration: f64,
}

impl Default for VnParams {
    fn default() -> Self {
        VnParams {
            nodes: (4, 10),
            connect_prob: (0.2, 0.6),
            requirement: (1.0, 10.0),
            shape: VnShape::Random,
            mean_duration: 4.0,
        }
    }
}

impl VnParams {
    pub fn validate(&self) -> Result<()> {
        if self.nodes.0 == 0 || self.nodes.0 > self.nodes.1 {
            return Err(Error::InvalidParameter(format!(
                "VN node interval [{}, {}] is invalid",
                self.nodes.0, self.nodes.1
            )));
        }
        check_interval("connect probability", self.connect_prob, false)?;
        if self.connect_prob.1 > 1.0 {
            return Err(Error::InvalidParameter("connect probability exceeds 1".into()));
        }
        check_interval("requirement", self.requirement, true)?;
        if !(self.mean_duration > 0.0) {
            return Err(Error::InvalidParameter("mean duration must be positive".into()));
        }
        Ok(())
    }
}

/// Exponential holding time rounded up to whole windows, at least one.
pub fn draw_duration(rng: &mut impl Rng, mean: f64) -> u32 {
    let exp = Exp::new(1.0 / mean).expect("positive rate");
    let t: f64 = exp.sample(rng);
    (t.ceil() as u32).max(1)
}

/// Draws one connected request. The random shape resamples its edge set
/// (keeping the per-request probability) until connected.
pub fn generate_vn_request<S: Scalar>(
    params: &VnParams,
    id: u64,
    arrival_window: u64,
    seed: u64,
) -> Result<VirtualNetworkRequest<S>> {
    params.validate()?;
    let mut rng = rng_from_seed(seed);
    let n = rng.gen_range(params.nodes.0..=params.nodes.1);
    let edges: Vec<(NodeId, NodeId)> = match params.shape {
        VnShape::Star => (1..n).map(|v| (0, v)).collect(),
        VnShape::Tree => (1..n).map(|v| (rng.gen_range(0..v), v)).collect(),
        VnShape::Random => {
            let p = uniform(&mut rng, params.connect_prob);
            let mut attempt = 0;
            loop {
                if attempt == MAX_CONNECT_ATTEMPTS {
                    return Err(Error::ConnectivityAttempts(MAX_CONNECT_ATTEMPTS));
                }
                attempt += 1;
                let mut edges = Vec::new();
                let mut adj = vec![Vec::new(); n];
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.gen_bool(p) {
                            adj[u].push((v, edges.len()));
                            adj[v].push((u, edges.len()));
                            edges.push((u, v));
                        }
                    }
                }
                if is_connected(&adj) {
                    break edges;
                }
            }
        }
    };
    let cpu = (0..n).map(|_| S::lit(uniform(&mut rng, params.requirement))).collect();
    let links = edges
        .into_iter()
        .map(|(u, v)| (u, v, S::lit(uniform(&mut rng, params.requirement))))
        .collect();
    let duration = draw_duration(&mut rng, params.mean_duration);
    VirtualNetworkRequest::new(
        id,
        (0..n).map(|i| format!("v{i}")).collect(),
        cpu,
        links,
        duration,
        arrival_window,
    )
}
