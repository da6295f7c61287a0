//! Parameter sweeps over experiment cells and their aggregation into plot
//! series.
//!
//! A sweep file is an experiment config plus three extra keys:
//! `sweep.parameter` (any config key), `sweep.values` (values assigned to
//! it) and `sweep.algorithms`. The grid is values x algorithms, and each
//! cell runs `replications` seeds starting at `seed`.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use toml::Value;

use crate::baselines::AlgorithmVariant;
use crate::config::{flatten, ExperimentConfig};
use crate::error::{Error, Result};
use crate::online::run_experiment;

/// Preset names with their sweep files.
pub const PRESETS: [(&str, &str); 5] = [
    ("density", include_str!("../presets/density.toml")),
    ("shape", include_str!("../presets/shape.toml")),
    ("rate", include_str!("../presets/rate.toml")),
    ("k", include_str!("../presets/k.toml")),
    ("checker", include_str!("../presets/checker.toml")),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub base: ExperimentConfig,
    pub parameter: String,
    pub values: Vec<Value>,
    pub algorithms: Vec<AlgorithmVariant>,
}

/// One aggregate CSV row: a grid cell at one replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: String,
    pub algorithm: String,
    pub replication: u64,
    pub seed: u64,
    pub average_revenue: f64,
    pub acceptance_ratio: f64,
    pub accepted: u64,
    pub rejected: u64,
    pub mean_link_load: f64,
}

/// Mean and spread of one (value, algorithm) series point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub parameter: String,
    pub value: String,
    pub algorithm: String,
    pub n: u64,
    pub mean_revenue: f64,
    pub std_revenue: f64,
    pub stderr_revenue: f64,
    pub mean_acceptance: f64,
}

/// Label of a swept value: strings bare, everything else in TOML syntax.
pub fn value_label(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl SweepConfig {
    pub fn new(base: ExperimentConfig, parameter: &str, values: Vec<Value>, algorithms: Vec<AlgorithmVariant>) -> Self {
        SweepConfig { base, parameter: parameter.to_string(), values, algorithms }
    }

    /// Parses a sweep file. Non-sweep keys configure the base experiment.
    pub fn from_toml(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e| Error::Config(format!("{e}")))?;
        let mut base = ExperimentConfig::default();
        let (mut parameter, mut values, mut algorithms) = (None, None, vec![base.algorithm]);
        for (key, value) in flatten(&table) {
            match key.as_str() {
                "sweep.parameter" => {
                    parameter = Some(value.as_str().ok_or_else(|| Error::Config("sweep.parameter must be a string".into()))?.to_string())
                }
                "sweep.values" => {
                    values = Some(value.as_array().ok_or_else(|| Error::Config("sweep.values must be an array".into()))?.clone())
                }
                "sweep.algorithms" => {
                    let list = value.as_array().ok_or_else(|| Error::Config("sweep.algorithms must be an array".into()))?;
                    algorithms = list
                        .iter()
                        .map(|a| {
                            a.as_str()
                                .ok_or_else(|| Error::Config("sweep.algorithms entries must be strings".into()))?
                                .parse()
                        })
                        .collect::<Result<_>>()?;
                }
                _ => base.set(&key, &value)?,
            }
        }
        let parameter = parameter.ok_or_else(|| Error::Config("missing sweep.parameter".into()))?;
        let values = values.ok_or_else(|| Error::Config("missing sweep.values".into()))?;
        let sweep = SweepConfig { base, parameter, values, algorithms };
        sweep.validate()?;
        Ok(sweep)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (_, text) = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::Config(format!("unknown sweep preset `{name}`")))?;
        Self::from_toml(text)
    }

    /// Rejects sweeps whose cells would not form valid configs.
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() || self.algorithms.is_empty() {
            return Err(Error::Config("sweep needs at least one value and one algorithm".into()));
        }
        if self.parameter == "algorithm" || self.parameter == "seed" || self.parameter == "replications" {
            return Err(Error::Config(format!("`{}` cannot be swept", self.parameter)));
        }
        for (_, cfg) in self.cells()? {
            cfg.validate()?;
        }
        Ok(())
    }

    /// The grid in row order: values outer, algorithms inner.
    pub fn cells(&self) -> Result<Vec<(String, ExperimentConfig)>> {
        let mut out = Vec::new();
        for value in &self.values {
            for &alg in &self.algorithms {
                let mut cfg = self.base.clone();
                cfg.set(&self.parameter, value)?;
                cfg.algorithm = alg;
                out.push((value_label(value), cfg));
            }
        }
        Ok(out)
    }

    /// Runs every cell at every replication. Cells run concurrently; rows
    /// come back in grid order, replications innermost.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let jobs: Vec<(String, ExperimentConfig, u64)> = self
            .cells()?
            .into_iter()
            .flat_map(|(label, cfg)| (0..self.base.replications).map(move |r| (label.clone(), cfg.clone(), r)))
            .collect();
        jobs.into_par_iter()
            .map(|(value, cfg, replication)| {
                let seed = cfg.seed.wrapping_add(replication);
                let r = run_experiment(&cfg, seed)?;
                Ok(SweepRow {
                    parameter: self.parameter.clone(),
                    value,
                    algorithm: cfg.algorithm.to_string(),
                    replication,
                    seed,
                    average_revenue: r.average_revenue,
                    acceptance_ratio: r.acceptance_ratio(),
                    accepted: r.accepted,
                    rejected: r.rejected,
                    mean_link_load: r.mean_link_load(cfg.warmup),
                })
            })
            .collect()
    }
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Groups rows by (parameter, value, algorithm) in first-appearance order
/// and reports revenue mean, sample standard deviation and standard error.
pub fn plot_data(rows: &[SweepRow]) -> Vec<SeriesPoint> {
    let mut keys: Vec<(&str, &str, &str)> = Vec::new();
    for r in rows {
        let key = (r.parameter.as_str(), r.value.as_str(), r.algorithm.as_str());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(parameter, value, algorithm)| {
            let group: Vec<&SweepRow> = rows
                .iter()
                .filter(|r| r.parameter == parameter && r.value == value && r.algorithm == algorithm)
                .collect();
            let n = group.len() as f64;
            let mean = group.iter().map(|r| r.average_revenue).sum::<f64>() / n;
            let var = if group.len() > 1 {
                group.iter().map(|r| (r.average_revenue - mean).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            SeriesPoint {
                parameter: parameter.to_string(),
                value: value.to_string(),
                algorithm: algorithm.to_string(),
                n: group.len() as u64,
                mean_revenue: mean,
                std_revenue: var.sqrt(),
                stderr_revenue: var.sqrt() / n.sqrt(),
                mean_acceptance: group.iter().map(|r| r.acceptance_ratio).sum::<f64>() / n,
            }
        })
        .collect()
}

pub fn write_plot_csv<W: Write>(out: W, points: &[SeriesPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in points {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}
