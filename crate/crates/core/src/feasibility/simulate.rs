use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::generate::rng_from_seed;
use crate::network::{ConflictGraph, LoadVector};
use crate::scalar::Scalar;

use super::mwis::greedy_mwis;
use super::{loaded_vertices, Detail, Method, QueueStats, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationParams {
    /// MAC inefficiency; demands are inflated by `1 / (1 - epsilon)`.
    pub epsilon: f64,
    /// Number of simulated slots.
    pub horizon: u64,
    /// Largest per-queue backlog tolerated over the final 20% of the run.
    pub q_max: f64,
    /// Largest tolerated least-squares slope of total backlog over the
    /// final half of the run, in units per slot.
    pub slope_tol: f64,
    /// Unit-size Bernoulli arrivals instead of deterministic fluid arrivals.
    pub stochastic: bool,
    pub seed: u64,
    /// Decide without simulating when the inflated loads already settle the
    /// outcome: a clique whose load exceeds one diverges under any
    /// scheduler, and closed neighborhoods all below one are stable under
    /// greedy maximal scheduling.
    pub screen: bool,
}

impl Default for SimulationParams {
    fn default() -> Self {
        SimulationParams {
            epsilon: 0.3,
            horizon: 10_000,
            q_max: 50.0,
            slope_tol: 1e-3,
            stochastic: false,
            seed: 0,
            screen: false,
        }
    }
}

impl SimulationParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::InvalidParameter(format!("epsilon {} not in [0, 1)", self.epsilon)));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be >= 1".into()));
        }
        if !(self.q_max >= 0.0) || !(self.slope_tol >= 0.0) {
            return Err(Error::InvalidParameter("q_max and slope_tol must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Per-vertex backlogs of the simulated link queues.
#[derive(Debug, Clone, PartialEq)]
pub struct SchedulerState<S> {
    pub queues: Vec<S>,
    pub slot: u64,
}

impl<S: Scalar> SchedulerState<S> {
    pub fn new(vertices: usize) -> Self {
        SchedulerState { queues: vec![S::zero(); vertices], slot: 0 }
    }

    /// One slot: add arrivals, serve a greedy max-weight schedule (one unit
    /// per scheduled vertex), advance the clock. Returns the schedule.
    pub fn step(&mut self, cg: &ConflictGraph, arrivals: &[S]) -> Vec<usize> {
        for (q, &a) in self.queues.iter_mut().zip(arrivals) {
            *q = *q + a;
        }
        let schedule = greedy_mwis(cg, &self.queues);
        for &v in &schedule {
            self.queues[v] = (self.queues[v] - S::one()).max(S::zero());
        }
        self.slot += 1;
        schedule
    }

    pub fn total(&self) -> S {
        self.queues.iter().copied().sum()
    }
}

/// Least-squares slope accumulator over `(t, y)` samples.
#[derive(Default)]
struct Slope {
    n: f64,
    st: f64,
    sy: f64,
    stt: f64,
    sty: f64,
}

impl Slope {
    fn push(&mut self, t: f64, y: f64) {
        self.n += 1.0;
        self.st += t;
        self.sy += y;
        self.stt += t * t;
        self.sty += t * y;
    }

    fn slope(&self) -> f64 {
        let denom = self.n * self.stt - self.st * self.st;
        if self.n < 2.0 || denom == 0.0 {
            0.0
        } else {
            (self.n * self.sty - self.st * self.sy) / denom
        }
    }
}

/// Simulates link queues fed at the inflated loads and served by the greedy
/// scheduler. Feasible iff the largest backlog over the final 20% of the
/// horizon is at most `q_max` and the total-backlog slope over the final
/// half is at most `slope_tol`.
pub fn simulate_check<S: Scalar>(
    cg: &ConflictGraph,
    loads: &LoadVector<S>,
    params: &SimulationParams,
) -> Result<Verdict> {
    params.validate()?;
    let active = loaded_vertices(cg, loads);
    let horizon = params.horizon;
    let tail_start = horizon - horizon / 5;
    let half_start = horizon / 2;
    let mut stats = QueueStats {
        slots_run: 0,
        max_tail_backlog: 0.0,
        backlog_slope: 0.0,
        final_total_backlog: 0.0,
        stopped_early: false,
        screened: false,
    };
    if active.is_empty() {
        stats.slots_run = horizon;
        return Ok(Verdict { feasible: true, method: Method::Simulation, detail: Detail::Simulation(stats) });
    }

    let sub = cg.induced(&active);
    let scale = S::one() / (S::one() - S::lit(params.epsilon));
    let rates: Vec<S> = active.iter().map(|&v| loads.get(v) * scale).collect();
    if params.screen {
        if let Some(feasible) = screen(&sub, &rates) {
            stats.screened = true;
            return Ok(Verdict { feasible, method: Method::Simulation, detail: Detail::Simulation(stats) });
        }
    }
    let q_max = S::lit(params.q_max);
    let mut rng = rng_from_seed(params.seed);
    let mut arrivals = rates.clone();
    let mut state = SchedulerState::<S>::new(active.len());
    let mut slope = Slope::default();

    for t in 0..horizon {
        if params.stochastic {
            for (a, &r) in arrivals.iter_mut().zip(&rates) {
                let whole = r.floor();
                let frac = (r - whole).as_f64();
                *a = whole + if rng.gen_bool(frac.clamp(0.0, 1.0)) { S::one() } else { S::zero() };
            }
        }
        state.step(&sub, &arrivals);
        let peak = state.queues.iter().copied().fold(S::zero(), S::max);
        if t >= tail_start {
            stats.max_tail_backlog = stats.max_tail_backlog.max(peak.as_f64());
        }
        if t >= half_start {
            slope.push((t - half_start) as f64, state.total().as_f64());
        }
        // A queue drains at most one unit per slot, so a backlog this large
        // cannot be back under `q_max` when the tail window opens.
        let slack = S::from_count(tail_start.saturating_sub(t) as usize);
        if peak > q_max + slack {
            stats.slots_run = t + 1;
            stats.stopped_early = t + 1 < horizon;
            stats.max_tail_backlog = stats.max_tail_backlog.max(peak.as_f64());
            stats.backlog_slope = slope.slope();
            stats.final_total_backlog = state.total().as_f64();
            return Ok(Verdict { feasible: false, method: Method::Simulation, detail: Detail::Simulation(stats) });
        }
    }
    stats.slots_run = horizon;
    stats.backlog_slope = slope.slope();
    stats.final_total_backlog = state.total().as_f64();
    let feasible = stats.max_tail_backlog <= params.q_max && stats.backlog_slope <= params.slope_tol;
    Ok(Verdict { feasible, method: Method::Simulation, detail: Detail::Simulation(stats) })
}

/// Settles the verdict from the rates alone when possible.
fn screen<S: Scalar>(cg: &ConflictGraph, rates: &[S]) -> Option<bool> {
    let tol = S::tolerance();
    if max_greedy_clique_load(cg, rates) > S::one() + tol {
        return Some(false);
    }
    let stable = (0..cg.vertex_count())
        .all(|v| rates[v] + cg.neighbors(v).iter().map(|&u| rates[u]).sum::<S>() < S::one() - tol);
    stable.then_some(true)
}

/// Largest load over cliques grown greedily from each vertex, adding the
/// heaviest neighbor adjacent to every member so far.
pub fn max_greedy_clique_load<S: Scalar>(cg: &ConflictGraph, rates: &[S]) -> S {
    let mut best = S::zero();
    for v in 0..cg.vertex_count() {
        let mut order: Vec<usize> = cg.neighbors(v).to_vec();
        order.sort_by(|&a, &b| rates[b].partial_cmp(&rates[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
        let mut clique = vec![v];
        let mut load = rates[v];
        for u in order {
            if clique.iter().all(|&c| cg.adjacent(c, u)) {
                clique.push(u);
                load = load + rates[u];
            }
        }
        best = best.max(load);
    }
    best
}
