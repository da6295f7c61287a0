//! `wivne`: topology and request generation, single embeddings, feasibility
//! checks, online experiments and parameter sweeps.
//!
//! Exit status: 0 success or feasible/accepted, 2 infeasible/rejected,
//! 1 error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use wivne_core::config::ExperimentConfig;
use wivne_core::embedding::{embed, EmbedDecision, EmbedParams, EmbeddingRecord};
use wivne_core::feasibility::{Detail, ExactParams, SimulationParams};
use wivne_core::network::io::{read_loads, read_request, read_substrate, requests_to_string, substrate_to_string};
use wivne_core::online::{build_substrate, run_experiment, write_metrics_csv, ArrivalStream};
use wivne_core::sweep::{plot_data, read_sweep_csv, write_plot_csv, write_sweep_csv, SweepConfig};
use wivne_core::{AlgorithmVariant, Checker, Error, Method, Result, Substrate, Verdict};

#[derive(Parser)]
#[command(name = "wivne", version, about = "Wireless virtual network embedding experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a substrate network file.
    GenTopology {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded arrival stream as a requests file.
    GenRequests {
        #[command(flatten)]
        config: ConfigArgs,
        /// Number of windows to draw arrivals for (default: `windows`).
        #[arg(long)]
        windows: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Embed one request into a substrate and print the embedding record.
    Embed {
        #[arg(long)]
        substrate: PathBuf,
        #[arg(long)]
        request: PathBuf,
        #[arg(long, default_value = "alg6")]
        algorithm: AlgorithmVariant,
        /// Candidate embeddings tried.
        #[arg(short, long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 10.0)]
        alpha: f64,
        #[arg(long, default_value = "simulation")]
        method: Method,
        #[command(flatten)]
        checker: CheckerArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether a load vector is schedulable.
    Check {
        #[arg(long)]
        substrate: PathBuf,
        #[arg(long)]
        loads: PathBuf,
        #[arg(long)]
        method: Method,
        #[command(flatten)]
        checker: CheckerArgs,
    },
    /// Run an online experiment and write the per-window metrics CSV.
    Simulate {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a parameter sweep and write the aggregate CSV.
    Sweep {
        /// Built-in sweep: density, shape, rate, k or checker.
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        /// Sweep file: an experiment config plus sweep.* keys.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce a sweep CSV to per-series means and standard errors.
    PlotData {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// Experiment config file with flat dotted keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one config key.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
}

impl ConfigArgs {
    fn load(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        apply_overrides(&mut cfg, &self.set, self.seed)?;
        Ok(cfg)
    }
}

fn apply_overrides(cfg: &mut ExperimentConfig, set: &[String], seed: Option<u64>) -> Result<()> {
    for assignment in set {
        cfg.apply_override(assignment)?;
    }
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    cfg.validate()
}

#[derive(Args)]
struct CheckerArgs {
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 10_000)]
    horizon: u64,
    #[arg(long, default_value_t = 50.0)]
    q_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    slope_tol: f64,
    /// Bernoulli arrivals in the simulation.
    #[arg(long)]
    stochastic: bool,
    /// Settle clear-cut simulation verdicts from the loads alone.
    #[arg(long)]
    screen: bool,
    #[arg(long, default_value_t = 0)]
    sim_seed: u64,
    #[arg(long, default_value_t = 20)]
    oracle_limit: usize,
}

impl CheckerArgs {
    fn checker(&self, method: Method) -> Result<Checker> {
        Ok(match method {
            Method::Sufficient => Checker::Sufficient,
            Method::Simulation => {
                let p = SimulationParams {
                    epsilon: self.epsilon,
                    horizon: self.horizon,
                    q_max: self.q_max,
                    slope_tol: self.slope_tol,
                    stochastic: self.stochastic,
                    seed: self.sim_seed,
                    screen: self.screen,
                };
                p.validate()?;
                Checker::Simulation(p)
            }
            Method::Exact => Checker::Exact(ExactParams { limit: self.oracle_limit }),
        })
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn verdict_text(sn: &Substrate, v: &Verdict) -> String {
    let mut out = format!("method = \"{}\"\nfeasible = {}\n", v.method, v.feasible);
    match &v.detail {
        Detail::Sufficient { violating, neighborhood_load } => {
            if let Some(l) = violating {
                out += &format!("violating = \"{}\"\n", sn.link_label(*l));
            }
            out += &format!("neighborhood_load = {neighborhood_load}\n");
        }
        Detail::Simulation(s) => {
            out += &format!(
                "slots_run = {}\nmax_tail_backlog = {}\nbacklog_slope = {}\nfinal_total_backlog = {}\nstopped_early = {}\nscreened = {}\n",
                s.slots_run, s.max_tail_backlog, s.backlog_slope, s.final_total_backlog, s.stopped_early, s.screened
            );
        }
        Detail::Exact { optimum, certificate } => {
            out += &format!("optimum = {optimum}\n");
            for (set, x) in certificate {
                let labels: Vec<String> = set.iter().map(|&l| format!("\"{}\"", sn.link_label(l))).collect();
                out += &format!("[[certificate]]\nlinks = [{}]\nfraction = {x}\n", labels.join(", "));
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenTopology { config, output } => {
            let cfg = config.load()?;
            let sn: Substrate = build_substrate(&cfg, cfg.seed)?;
            write_output(output.as_deref(), substrate_to_string(&sn)?.as_bytes())?;
        }
        Command::GenRequests { config, windows, output } => {
            let cfg = config.load()?;
            let mut stream = ArrivalStream::new(cfg.arrival_rate, cfg.seed)?;
            let mut all = Vec::new();
            for w in 0..windows.unwrap_or(cfg.windows) {
                all.extend(stream.window::<f64>(&cfg.requests, w)?);
            }
            write_output(output.as_deref(), requests_to_string(&all)?.as_bytes())?;
        }
        Command::Embed { substrate, request, algorithm, k, alpha, method, checker, output } => {
            if k == 0 {
                return Err(Error::InvalidParameter("k must be >= 1".into()));
            }
            let sn: Substrate = read_substrate(&substrate)?;
            let vn = read_request(&request)?;
            let ledger = wivne_core::Ledger::pristine(&sn);
            let params = EmbedParams { k, alpha, variant: algorithm };
            match embed(&sn, &ledger, &vn, &params, &checker.checker(method)?)? {
                EmbedDecision::Accepted { candidate, verdict, candidates_built, candidates_checked } => {
                    let record = EmbeddingRecord::new(&sn, &vn, &candidate.embedding, Some(candidate.sigma));
                    write_output(output.as_deref(), record.to_text()?.as_bytes())?;
                    eprintln!(
                        "accepted: root {}, sigma {}, {candidates_checked} of {candidates_built} candidates checked ({})",
                        sn.name(candidate.root),
                        candidate.sigma,
                        verdict.method
                    );
                }
                EmbedDecision::Rejected { candidates_built, candidates_checked } => {
                    eprintln!("rejected: {candidates_checked} of {candidates_built} candidates checked");
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Check { substrate, loads, method, checker } => {
            let sn: Substrate = read_substrate(&substrate)?;
            let loads = read_loads(&sn, &loads)?;
            let verdict = checker.checker(method)?.check(sn.conflict_graph(), &loads)?;
            print!("{}", verdict_text(&sn, &verdict));
            if !verdict.feasible {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Simulate { config, output } => {
            let cfg = config.load()?;
            let result = run_experiment(&cfg, cfg.seed)?;
            let mut buf = Vec::new();
            write_metrics_csv(&mut buf, &result.windows)?;
            write_output(output.as_deref(), &buf)?;
            eprintln!(
                "average_revenue = {}\nacceptance_ratio = {}\naccepted = {}\nrejected = {}",
                result.average_revenue,
                result.acceptance_ratio(),
                result.accepted,
                result.rejected
            );
        }
        Command::Sweep { preset, config, set, seed, output } => {
            let mut sweep = match (preset, config) {
                (Some(name), None) => SweepConfig::preset(&name)?,
                (None, Some(path)) => SweepConfig::from_toml(&fs::read_to_string(&path)?)?,
                _ => return Err(Error::Config("sweep needs --preset or --config".into())),
            };
            apply_overrides(&mut sweep.base, &set, seed)?;
            sweep.validate()?;
            let rows = sweep.run()?;
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &rows)?;
            write_output(output.as_deref(), &buf)?;
        }
        Command::PlotData { input, output } => {
            let rows = read_sweep_csv(fs::File::open(&input)?)?;
            let mut buf = Vec::new();
            write_plot_csv(&mut buf, &plot_data(&rows))?;
            write_output(output.as_deref(), &buf)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
