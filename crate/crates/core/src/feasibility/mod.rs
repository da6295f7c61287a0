//! Schedulability of a load vector on a conflict graph.
//!
//! Three checkers share the [`Verdict`] type: a local sufficient condition,
//! a queue simulation driven by a greedy max-weight scheduler, and an exact
//! oracle for small instances that decides membership in the convex hull of
//! independent sets.

mod exact;
mod lp;
mod mwis;
mod simulate;
mod sufficient;

pub use exact::{exact_oracle, exact_oracle_in, maximal_independent_sets, ExactParams};
pub use lp::{solve_packing, PackingSolution};
pub use mwis::{greedy_mwis, max_weight_independent_set};
pub use simulate::{simulate_check, SchedulerState, SimulationParams};
pub use sufficient::{sufficient_check, SUFFICIENT_TOLERANCE};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::network::{ConflictGraph, LinkId, LoadVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sufficient,
    Simulation,
    Exact,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Sufficient => "sufficient",
            Method::Simulation => "simulation",
            Method::Exact => "exact",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sufficient" => Ok(Method::Sufficient),
            "simulation" => Ok(Method::Simulation),
            "exact" => Ok(Method::Exact),
            other => Err(crate::Error::Parse(format!("unknown feasibility method `{other}`"))),
        }
    }
}

/// Queue statistics reported by the simulation checker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueueStats {
    pub slots_run: u64,
    pub max_tail_backlog: f64,
    pub backlog_slope: f64,
    pub final_total_backlog: f64,
    /// The run stopped early once the tail bound could no longer hold.
    pub stopped_early: bool,
    /// Decided by the load screens without simulating.
    pub screened: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Detail {
    /// First vertex (by id) whose closed-neighborhood load exceeds one.
    Sufficient { violating: Option<LinkId>, neighborhood_load: f64 },
    Simulation(QueueStats),
    /// `optimum` is the least total time needed to serve the loads; the
    /// certificate lists time-sharing fractions over independent sets.
    Exact { optimum: f64, certificate: Vec<(Vec<LinkId>, f64)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub feasible: bool,
    pub method: Method,
    pub detail: Detail,
}

/// Feasibility strategy with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Checker {
    Sufficient,
    Simulation(SimulationParams),
    Exact(ExactParams),
}

impl Checker {
    pub fn method(&self) -> Method {
        match self {
            Checker::Sufficient => Method::Sufficient,
            Checker::Simulation(_) => Method::Simulation,
            Checker::Exact(_) => Method::Exact,
        }
    }

    pub fn check<S: Scalar>(&self, cg: &ConflictGraph, loads: &LoadVector<S>) -> Result<Verdict> {
        match self {
            Checker::Sufficient => Ok(sufficient_check(cg, loads)),
            Checker::Simulation(p) => simulate_check(cg, loads, p),
            Checker::Exact(p) => exact_oracle(cg, loads, p),
        }
    }
}

/// Vertices with strictly positive load, in id order.
pub(crate) fn loaded_vertices<S: Scalar>(cg: &ConflictGraph, loads: &LoadVector<S>) -> Vec<LinkId> {
    (0..cg.vertex_count()).filter(|&v| loads.get(v) > S::zero()).collect()
}
