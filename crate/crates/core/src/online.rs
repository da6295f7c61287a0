//! Window-quantized online simulation: arrivals, revenue-ordered admission,
//! departures and the time-averaged revenue objective.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, SubstrateKind};
use crate::embedding::{embed, revenue, EmbedParams, Embedding};
use crate::error::{Error, Result};
use crate::feasibility::Checker;
use crate::network::generate::{
    generate_grid_topology, generate_random_topology, generate_vn_request, rng_from_seed,
    MAX_CONNECT_ATTEMPTS,
};
use crate::network::io::read_substrate;
use crate::network::{LoadVector, ResourceLedger, SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

/// An admitted request together with its embedding.
#[derive(Debug, Clone)]
pub struct ActiveVn<S> {
    pub request: VirtualNetworkRequest<S>,
    pub embedding: Embedding<S>,
    pub expiry: u64,
    pub revenue: S,
}

/// Metrics recorded for one window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowMetrics {
    pub window: u64,
    #[serde(rename = "R_t")]
    pub r_t: f64,
    pub cumulative_avg_revenue: f64,
    pub accepted: u64,
    pub rejected: u64,
    pub active_count: u64,
    pub mean_link_load: f64,
    pub max_link_load: f64,
}

/// Per-window admission outcome, in processing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Admission<S> {
    pub request_id: u64,
    pub revenue: S,
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct SimulationState<S> {
    pub window: u64,
    pub active: Vec<ActiveVn<S>>,
    pub ledger: ResourceLedger<S>,
    pub accounting: Vec<WindowMetrics>,
    /// Admissions of the most recent window.
    pub last_admissions: Vec<Admission<S>>,
    /// Total wall time spent in embedding calls.
    pub embed_time: Duration,
    pub embed_calls: u64,
    warmup: u64,
    revenue_sum: f64,
}

/// Embedding settings applied to every arrival.
#[derive(Debug, Clone)]
pub struct Embedder<S> {
    pub params: EmbedParams<S>,
    pub checker: Checker,
}

impl<S: Scalar> SimulationState<S> {
    /// An empty state at window 0. Windows before `warmup` are excluded from
    /// the running average.
    pub fn new(sn: &SubstrateNetwork<S>, warmup: u64) -> Self {
        SimulationState {
            window: 0,
            active: Vec::new(),
            ledger: ResourceLedger::pristine(sn),
            accounting: Vec::new(),
            last_admissions: Vec::new(),
            embed_time: Duration::ZERO,
            embed_calls: 0,
            warmup,
            revenue_sum: 0.0,
        }
    }

    /// Revenue of the currently active requests.
    pub fn active_revenue(&self) -> S {
        self.active.iter().map(|a| a.revenue).sum()
    }

    /// Processes one window: releases expired requests, then embeds the
    /// arrivals in descending revenue order (ties by id), committing each
    /// accepted request before the next attempt.
    pub fn step_window(
        &mut self,
        sn: &SubstrateNetwork<S>,
        arrivals: Vec<VirtualNetworkRequest<S>>,
        embedder: &Embedder<S>,
    ) -> Result<&WindowMetrics> {
        let now = self.window;
        let (expired, kept): (Vec<_>, Vec<_>) = std::mem::take(&mut self.active).into_iter().partition(|a| a.expiry <= now);
        for a in &expired {
            self.ledger.release(&a.embedding);
        }
        self.active = kept;

        let alpha = embedder.params.alpha;
        let mut batch: Vec<(S, VirtualNetworkRequest<S>)> =
            arrivals.into_iter().map(|vn| (revenue(&vn, alpha), vn)).collect();
        batch.sort_by(|(ra, a), (rb, b)| {
            rb.partial_cmp(ra).unwrap_or(std::cmp::Ordering::Equal).then(a.id().cmp(&b.id()))
        });

        let (mut accepted, mut rejected) = (0u64, 0u64);
        self.last_admissions.clear();
        for (rev, vn) in batch {
            let start = Instant::now();
            let decision = embed(sn, &self.ledger, &vn, &embedder.params, &embedder.checker)?;
            self.embed_time += start.elapsed();
            self.embed_calls += 1;
            let admitted = decision.embedding().cloned();
            self.last_admissions.push(Admission { request_id: vn.id(), revenue: rev, accepted: admitted.is_some() });
            match admitted {
                Some(embedding) => {
                    self.ledger.commit(&embedding);
                    accepted += 1;
                    let expiry = now + u64::from(vn.duration());
                    self.active.push(ActiveVn { request: vn, embedding, expiry, revenue: rev });
                }
                None => rejected += 1,
            }
        }

        let r_t = self.active_revenue().as_f64();
        let counted = now + 1 - self.warmup.min(now + 1);
        if now >= self.warmup {
            self.revenue_sum += r_t;
        }
        let loads = LoadVector::from_ledger(sn, &self.ledger);
        self.accounting.push(WindowMetrics {
            window: now,
            r_t,
            cumulative_avg_revenue: if counted == 0 { 0.0 } else { self.revenue_sum / counted as f64 },
            accepted,
            rejected,
            active_count: self.active.len() as u64,
            mean_link_load: loads.mean().as_f64(),
            max_link_load: loads.max().as_f64(),
        });
        self.window += 1;
        Ok(self.accounting.last().expect("just pushed"))
    }
}

/// Outcome of one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub windows: Vec<WindowMetrics>,
    /// Mean of R(t) over post-warm-up windows.
    pub average_revenue: f64,
    pub accepted: u64,
    pub rejected: u64,
    pub link_count: usize,
    pub embed_time: Duration,
    pub embed_calls: u64,
}

impl ExperimentResult {
    pub fn acceptance_ratio(&self) -> f64 {
        let total = self.accepted + self.rejected;
        if total == 0 {
            0.0
        } else {
            self.accepted as f64 / total as f64
        }
    }

    /// Mean wall time of one embedding call.
    pub fn mean_embed_time(&self) -> Duration {
        if self.embed_calls == 0 {
            Duration::ZERO
        } else {
            self.embed_time / self.embed_calls as u32
        }
    }

    /// Mean link load averaged over post-warm-up windows.
    pub fn mean_link_load(&self, warmup: u64) -> f64 {
        let tail: Vec<f64> = self.windows.iter().filter(|w| w.window >= warmup).map(|w| w.mean_link_load).collect();
        if tail.is_empty() {
            0.0
        } else {
            tail.iter().sum::<f64>() / tail.len() as f64
        }
    }
}

/// Derives an independent stream seed from a base seed and a stream tag.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    rng_from_seed(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)).gen()
}

const SUBSTRATE_STREAM: u64 = 1;
const ARRIVAL_STREAM: u64 = 2;

/// Builds the substrate described by the config. Random substrates are
/// redrawn until connected. If no draw within the attempt cap is connected,
/// the largest connected component over all draws is used (first draw wins
/// ties).
pub fn build_substrate<S: Scalar>(config: &ExperimentConfig, seed: u64) -> Result<SubstrateNetwork<S>> {
    match config.substrate.kind {
        SubstrateKind::Random => {
            let params = config.random_params();
            let mut rng = rng_from_seed(derive_seed(seed, SUBSTRATE_STREAM));
            let mut best: Option<(usize, SubstrateNetwork<S>)> = None;
            for _ in 0..MAX_CONNECT_ATTEMPTS {
                let sn = generate_random_topology(&params, rng.gen())?;
                if sn.is_connected() {
                    return Ok(sn);
                }
                let size = sn.components()[0].len();
                if best.as_ref().is_none_or(|(b, _)| size > *b) {
                    best = Some((size, sn));
                }
            }
            match best {
                Some((size, sn)) if size >= 2 => sn.largest_component(),
                _ => Err(Error::ConnectivityAttempts(MAX_CONNECT_ATTEMPTS)),
            }
        }
        SubstrateKind::Grid => generate_grid_topology(&config.grid_params(), derive_seed(seed, SUBSTRATE_STREAM)),
        SubstrateKind::File => {
            let path = config.substrate.path.as_ref().ok_or_else(|| Error::Config("substrate.path missing".into()))?;
            read_substrate(path)
        }
    }
}

/// Arrival stream generator: a Poisson count per window and iid requests.
pub struct ArrivalStream {
    rng: rand_chacha::ChaCha8Rng,
    poisson: Option<Poisson<f64>>,
    next_id: u64,
}

impl ArrivalStream {
    pub fn new(rate: f64, seed: u64) -> Result<Self> {
        let poisson = if rate > 0.0 {
            Some(Poisson::new(rate).map_err(|e| Error::InvalidParameter(format!("arrival rate: {e}")))?)
        } else {
            None
        };
        Ok(ArrivalStream { rng: rng_from_seed(derive_seed(seed, ARRIVAL_STREAM)), poisson, next_id: 0 })
    }

    pub fn window<S: Scalar>(
        &mut self,
        params: &crate::network::generate::VnParams,
        window: u64,
    ) -> Result<Vec<VirtualNetworkRequest<S>>> {
        let count = self.poisson.as_ref().map_or(0, |p| p.sample(&mut self.rng) as u64);
        (0..count)
            .map(|_| {
                let id = self.next_id;
                self.next_id += 1;
                generate_vn_request(params, id, window, self.rng.gen())
            })
            .collect()
    }
}

/// Runs the configured experiment for one seed. The substrate and arrival
/// stream depend only on the seed and their own parameters, so runs that
/// differ only in algorithm or checker see identical inputs.
pub fn run_experiment(config: &ExperimentConfig, seed: u64) -> Result<ExperimentResult> {
    config.validate()?;
    let sn: SubstrateNetwork<f64> = build_substrate(config, seed)?;
    let mut arrivals = ArrivalStream::new(config.arrival_rate, seed)?;
    let embedder = Embedder {
        params: EmbedParams { k: config.k, alpha: config.alpha, variant: config.algorithm },
        checker: config.checker.checker(),
    };
    let mut state = SimulationState::new(&sn, config.warmup);
    for w in 0..config.windows {
        let batch = arrivals.window(&config.requests, w)?;
        state.step_window(&sn, batch, &embedder)?;
    }
    let accepted = state.accounting.iter().map(|m| m.accepted).sum();
    let rejected = state.accounting.iter().map(|m| m.rejected).sum();
    let average_revenue = state.accounting.last().map_or(0.0, |m| m.cumulative_avg_revenue);
    Ok(ExperimentResult {
        windows: state.accounting,
        average_revenue,
        accepted,
        rejected,
        link_count: sn.link_count(),
        embed_time: state.embed_time,
        embed_calls: state.embed_calls,
    })
}

/// Writes the per-window metrics CSV.
pub fn write_metrics_csv<W: Write>(out: W, windows: &[WindowMetrics]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for m in windows {
        w.serialize(m)?;
    }
    w.flush()?;
    Ok(())
}
