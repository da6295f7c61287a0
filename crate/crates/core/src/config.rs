//! Experiment configuration as flat dotted keys.
//!
//! A config file is TOML whose keys are read in flattened form, so
//! `substrate.nodes = 50` and `[substrate]\nnodes = 50` are equivalent.
//! The same keys are accepted as `key=value` overrides. Recognized keys
//! (defaults in parentheses):
//!
//! | key | meaning |
//! |-----|---------|
//! | `substrate.kind` | `random` (default), `grid` or `file` |
//! | `substrate.path` | substrate file for `kind = "file"` |
//! | `substrate.nodes` | random substrate node count (50) |
//! | `substrate.side` | deployment square side (100) |
//! | `substrate.density` | `high` `[20,40]`, `middle` `[15,30]`, `low` `[10,20]` range presets |
//! | `substrate.range` | explicit transmission range interval |
//! | `substrate.resources` | node CPU / link capacity interval ([100, 300]) |
//! | `substrate.grid_width`, `substrate.grid_height` | grid size (7 x 7) |
//! | `requests.rate` | mean arrivals per window (5) |
//! | `requests.nodes` | VN node-count interval ([4, 10]) |
//! | `requests.connect_prob` | VN link probability interval ([0.2, 0.6]) |
//! | `requests.requirement` | CPU / bandwidth demand interval ([1, 10]) |
//! | `requests.shape` | `random`, `star` or `tree` |
//! | `requests.mean_duration` | mean holding time in windows (4) |
//! | `algorithm` | `alg1` .. `alg6` (alg6) |
//! | `checker.method` | `sufficient`, `simulation` (default) or `exact` |
//! | `checker.epsilon` | MAC inefficiency (0.3) |
//! | `checker.horizon` | simulated slots per check (2000) |
//! | `checker.q_max` | tail backlog bound (50) |
//! | `checker.slope_tol` | backlog slope bound (0.001) |
//! | `checker.stochastic` | Bernoulli arrivals (false) |
//! | `checker.screen` | settle clear-cut simulation verdicts from the loads (true) |
//! | `checker.oracle_limit` | exact oracle vertex limit (20) |
//! | `alpha` | bandwidth revenue weight (10) |
//! | `k` | candidates per request (8) |
//! | `interference_hops` | k-hop interference model (2) |
//! | `windows` | simulated windows (200) |
//! | `warmup` | windows excluded from the average (20) |
//! | `replications` | seeds per sweep cell (1) |
//! | `seed` | base seed (1) |

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use toml::Value;

use crate::baselines::AlgorithmVariant;
use crate::error::{Error, Result};
use crate::feasibility::{Checker, ExactParams, Method, SimulationParams};
use crate::network::generate::{GridTopologyParams, RandomTopologyParams, VnParams, VnShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubstrateKind {
    Random,
    Grid,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Density {
    High,
    Middle,
    Low,
}

impl Density {
    pub const ALL: [Density; 3] = [Density::High, Density::Middle, Density::Low];

    /// Transmission range interval of the preset.
    pub fn range(self) -> (f64, f64) {
        match self {
            Density::High => (20.0, 40.0),
            Density::Middle => (15.0, 30.0),
            Density::Low => (10.0, 20.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Density::High => "high",
            Density::Middle => "middle",
            Density::Low => "low",
        }
    }
}

impl std::str::FromStr for Density {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "high" => Ok(Density::High),
            "middle" => Ok(Density::Middle),
            "low" => Ok(Density::Low),
            other => Err(Error::Config(format!("unknown density `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubstrateConfig {
    pub kind: SubstrateKind,
    pub path: Option<PathBuf>,
    pub random: RandomTopologyParams,
    pub grid: GridTopologyParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckerConfig {
    pub method: Method,
    pub epsilon: f64,
    pub horizon: u64,
    pub q_max: f64,
    pub slope_tol: f64,
    pub stochastic: bool,
    pub screen: bool,
    pub oracle_limit: usize,
}

impl CheckerConfig {
    pub fn checker(&self) -> Checker {
        match self.method {
            Method::Sufficient => Checker::Sufficient,
            Method::Simulation => Checker::Simulation(SimulationParams {
                epsilon: self.epsilon,
                horizon: self.horizon,
                q_max: self.q_max,
                slope_tol: self.slope_tol,
                stochastic: self.stochastic,
                seed: 0,
                screen: self.screen,
            }),
            Method::Exact => Checker::Exact(ExactParams { limit: self.oracle_limit }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub substrate: SubstrateConfig,
    pub requests: VnParams,
    pub arrival_rate: f64,
    pub algorithm: AlgorithmVariant,
    pub checker: CheckerConfig,
    pub alpha: f64,
    pub k: usize,
    pub interference_hops: u32,
    pub windows: u64,
    pub warmup: u64,
    pub replications: u64,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            substrate: SubstrateConfig {
                kind: SubstrateKind::Random,
                path: None,
                random: RandomTopologyParams::default(),
                grid: GridTopologyParams::default(),
            },
            requests: VnParams::default(),
            arrival_rate: 5.0,
            algorithm: AlgorithmVariant::WEM,
            checker: CheckerConfig {
                method: Method::Simulation,
                epsilon: 0.3,
                horizon: 2000,
                q_max: 50.0,
                slope_tol: 1e-3,
                stochastic: false,
                screen: true,
                oracle_limit: 20,
            },
            alpha: 10.0,
            k: 8,
            interference_hops: 2,
            windows: 200,
            warmup: 20,
            replications: 1,
            seed: 1,
        }
    }
}

fn bad(key: &str, v: &Value) -> Error {
    Error::Config(format!("invalid value `{v}` for `{key}`"))
}

fn as_f64(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(bad(key, v)),
    }
}

fn as_u64(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        _ => Err(bad(key, v)),
    }
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(key, v))
}

fn as_pair(key: &str, v: &Value) -> Result<(f64, f64)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((as_f64(key, a)?, as_f64(key, b)?)),
        _ => Err(bad(key, v)),
    }
}

fn parse_with<T: std::str::FromStr<Err = Error>>(key: &str, v: &Value) -> Result<T> {
    as_str(key, v)?.parse().map_err(|e: Error| Error::Config(format!("`{key}`: {e}")))
}

/// Flattens nested tables into `(dotted key, leaf value)` pairs.
pub fn flatten(table: &toml::Table) -> Vec<(String, Value)> {
    fn walk(prefix: &str, table: &toml::Table, out: &mut Vec<(String, Value)>) {
        for (k, v) in table {
            let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            match v {
                Value::Table(t) => walk(&key, t, out),
                leaf => out.push((key, leaf.clone())),
            }
        }
    }
    let mut out = Vec::new();
    walk("", table, &mut out);
    out
}

impl ExperimentConfig {
    /// Sets one dotted key. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, v: &Value) -> Result<()> {
        match key {
            "substrate.kind" => {
                self.substrate.kind = match as_str(key, v)? {
                    "random" => SubstrateKind::Random,
                    "grid" => SubstrateKind::Grid,
                    "file" => SubstrateKind::File,
                    _ => return Err(bad(key, v)),
                }
            }
            "substrate.path" => self.substrate.path = Some(PathBuf::from(as_str(key, v)?)),
            "substrate.nodes" => self.substrate.random.nodes = as_u64(key, v)? as usize,
            "substrate.side" => self.substrate.random.side = as_f64(key, v)?,
            "substrate.density" => self.substrate.random.range = parse_with::<Density>(key, v)?.range(),
            "substrate.range" => self.substrate.random.range = as_pair(key, v)?,
            "substrate.resources" => {
                let r = as_pair(key, v)?;
                self.substrate.random.resources = r;
                self.substrate.grid.resources = r;
            }
            "substrate.grid_width" => self.substrate.grid.width = as_u64(key, v)? as usize,
            "substrate.grid_height" => self.substrate.grid.height = as_u64(key, v)? as usize,
            "requests.rate" => self.arrival_rate = as_f64(key, v)?,
            "requests.nodes" => {
                let (lo, hi) = as_pair(key, v)?;
                if lo < 1.0 || lo.fract() != 0.0 || hi.fract() != 0.0 {
                    return Err(bad(key, v));
                }
                self.requests.nodes = (lo as usize, hi as usize);
            }
            "requests.connect_prob" => self.requests.connect_prob = as_pair(key, v)?,
            "requests.requirement" => self.requests.requirement = as_pair(key, v)?,
            "requests.shape" => self.requests.shape = parse_with::<VnShape>(key, v)?,
            "requests.mean_duration" => self.requests.mean_duration = as_f64(key, v)?,
            "algorithm" => self.algorithm = parse_with(key, v)?,
            "checker.method" => self.checker.method = parse_with(key, v)?,
            "checker.epsilon" => self.checker.epsilon = as_f64(key, v)?,
            "checker.horizon" => self.checker.horizon = as_u64(key, v)?,
            "checker.q_max" => self.checker.q_max = as_f64(key, v)?,
            "checker.slope_tol" => self.checker.slope_tol = as_f64(key, v)?,
            "checker.stochastic" => self.checker.stochastic = v.as_bool().ok_or_else(|| bad(key, v))?,
            "checker.screen" => self.checker.screen = v.as_bool().ok_or_else(|| bad(key, v))?,
            "checker.oracle_limit" => self.checker.oracle_limit = as_u64(key, v)? as usize,
            "alpha" => self.alpha = as_f64(key, v)?,
            "k" => self.k = as_u64(key, v)? as usize,
            "interference_hops" => self.interference_hops = as_u64(key, v)? as u32,
            "windows" => self.windows = as_u64(key, v)?,
            "warmup" => self.warmup = as_u64(key, v)?,
            "replications" => self.replications = as_u64(key, v)?,
            "seed" => self.seed = as_u64(key, v)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies every key of a TOML document.
    pub fn apply_toml(&mut self, text: &str) -> Result<()> {
        let table: toml::Table = text.parse().map_err(|e| Error::Config(format!("{e}")))?;
        for (key, value) in flatten(&table) {
            self.set(&key, &value)?;
        }
        Ok(())
    }

    /// Applies a `key=value` override; the value uses TOML syntax, with bare
    /// words taken as strings.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override `{assignment}` is not key=value")))?;
        let (key, raw) = (key.trim(), raw.trim());
        let value = format!("v = {raw}")
            .parse::<toml::Table>()
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| Value::String(raw.to_string()));
        self.set(key, &value)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::default();
        cfg.apply_toml(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.substrate.kind == SubstrateKind::File && self.substrate.path.is_none() {
            return fail("substrate.kind = \"file\" needs substrate.path");
        }
        if !(self.arrival_rate >= 0.0) || !self.arrival_rate.is_finite() {
            return fail("requests.rate must be a finite nonnegative number");
        }
        if self.k == 0 {
            return fail("k must be >= 1");
        }
        if !(self.alpha >= 0.0) {
            return fail("alpha must be >= 0");
        }
        if self.warmup >= self.windows && self.windows > 0 {
            return fail("warmup must be shorter than windows");
        }
        self.requests.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.checker.method == Method::Simulation {
            if let Checker::Simulation(p) = self.checker.checker() {
                p.validate().map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        Ok(())
    }

    /// Random-substrate parameters with the configured interference model.
    pub fn random_params(&self) -> RandomTopologyParams {
        RandomTopologyParams { interference_hops: self.interference_hops, ..self.substrate.random.clone() }
    }

    pub fn grid_params(&self) -> GridTopologyParams {
        GridTopologyParams { interference_hops: self.interference_hops, ..self.substrate.grid.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = ExperimentConfig::default();
        assert_eq!((c.alpha, c.k, c.interference_hops, c.checker.epsilon), (10.0, 8, 2, 0.3));
        assert_eq!(c.substrate.random.range, (15.0, 30.0));
        assert_eq!(c.arrival_rate, 5.0);
        c.validate().unwrap();
    }

    #[test]
    fn dotted_and_nested_keys_agree() {
        let mut a = ExperimentConfig::default();
        a.apply_toml("substrate.nodes = 30\nchecker.method = \"sufficient\"\n").unwrap();
        let mut b = ExperimentConfig::default();
        b.apply_toml("[substrate]\nnodes = 30\n[checker]\nmethod = \"sufficient\"\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.substrate.random.nodes, 30);
        assert_eq!(a.checker.method, Method::Sufficient);
    }

    #[test]
    fn overrides() {
        let mut c = ExperimentConfig::default();
        c.apply_override("algorithm=alg3").unwrap();
        c.apply_override("substrate.range=[10, 20]").unwrap();
        c.apply_override("requests.shape = star").unwrap();
        assert_eq!(c.algorithm, AlgorithmVariant::ALG3);
        assert_eq!(c.substrate.random.range, (10.0, 20.0));
        assert_eq!(c.requests.shape, VnShape::Star);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        let mut c = ExperimentConfig::default();
        assert!(matches!(c.apply_toml("bogus = 1"), Err(Error::Config(_))));
        assert!(c.apply_override("k=-1").is_err());
        assert!(c.apply_override("algorithm=alg9").is_err());
        assert!(c.apply_override("novalue").is_err());
        c.apply_override("checker.epsilon=1.5").unwrap();
        assert!(c.validate().is_err());
    }
}
