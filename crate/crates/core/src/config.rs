// SPDX-License-Identifier: Apache-2.0

//! `key=value` configuration files and the layered settings behind the CLI.
//!
//! The same format is used for `--config` files and for emitted manifests,
//! so a manifest can be fed back as a config to rerun an experiment.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::centrality::Metric;
use crate::error::{Error, Result};
use crate::failure::{SelectionMode, SurvivalModel};
use crate::graph::EdgeListFormat;
use crate::harness::{tau_grid, ExperimentConfig, DEFAULT_TAU_MAX, DEFAULT_TAU_STEP};
use crate::spectral::Convergence;

/// Survival probabilities used for `uniform` entries without an explicit `p`.
pub const DEFAULT_UNIFORM_P: [f64; 3] = [0.1, 0.3, 0.5];

/// Keys a manifest carries beyond the experiment configuration.
const MANIFEST_KEYS: [&str; 8] = [
    "command",
    "tool_version",
    "dataset_checksum",
    "duration_ms",
    "warning",
    "file",
    "katz_alpha_used",
    "netshield_coupling",
];

/// Ordered `key=value` pairs. Keys may repeat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyValues {
    pub pairs: Vec<(String, String)>,
}

impl KeyValues {
    pub fn push(&mut self, key: &str, value: &str) {
        self.pairs.push((key.to_string(), value.to_string()));
    }

    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = KeyValues::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("expected key=value, got '{line}'"),
            })?;
            kv.push(k.trim(), v.trim());
        }
        Ok(kv)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn render(&self) -> String {
        self.pairs.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.pairs.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// One `--model` entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    /// `uniform` expands over the `p` list; `uniform:0.3` is explicit.
    Uniform(Option<f64>),
    BestConnected,
    Benchmark,
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(p) = s.strip_prefix("uniform:") {
            return Ok(ModelSpec::Uniform(Some(parse_value("model p", p)?)));
        }
        match s.as_str() {
            "uniform" => Ok(ModelSpec::Uniform(None)),
            "bc" | "best_connected" | "best-connected" => Ok(ModelSpec::BestConnected),
            "benchmark" => Ok(ModelSpec::Benchmark),
            other => Err(Error::InvalidParameter(format!("unknown model '{other}'"))),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("invalid value '{raw}' for {key}")))
}

fn parse_list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

fn parse_bool(key: &str, raw: &str) -> Result<bool> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::InvalidParameter(format!("invalid boolean '{raw}' for {key}"))),
    }
}

/// Partially specified run settings; one layer per source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub graph: Option<PathBuf>,
    pub format: Option<EdgeListFormat>,
    pub dataset: Option<String>,
    pub models: Option<Vec<ModelSpec>>,
    pub p: Option<Vec<f64>>,
    pub metrics: Option<Vec<Metric>>,
    pub mode: Option<SelectionMode>,
    pub tau_grid: Option<Vec<f64>>,
    pub tau_max: Option<f64>,
    pub tau_step: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub katz_alpha: Option<f64>,
    pub k: Option<Vec<usize>>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub benchmark: Option<bool>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

impl Settings {
    /// Reads settings from pairs. Unknown keys are rejected unless they are
    /// manifest bookkeeping keys and `allow_manifest_keys` is set.
    pub fn from_pairs(kv: &KeyValues, allow_manifest_keys: bool) -> Result<Settings> {
        let mut s = Settings::default();
        for (key, value) in &kv.pairs {
            let k = key.as_str();
            match k {
                "graph" => s.graph = Some(PathBuf::from(value)),
                "format" => s.format = Some(value.parse()?),
                "dataset" => s.dataset = Some(value.clone()),
                "model" | "models" => s.models = Some(parse_list(k, value)?),
                "p" => s.p = Some(parse_list(k, value)?),
                "metric" | "metrics" => s.metrics = Some(parse_list(k, value)?),
                "mode" => s.mode = Some(value.parse()?),
                "tau_grid" => s.tau_grid = Some(parse_list(k, value)?),
                "tau_max" => s.tau_max = Some(parse_value(k, value)?),
                "tau_step" => s.tau_step = Some(parse_value(k, value)?),
                "trials" => s.trials = Some(parse_value(k, value)?),
                "seed" => s.seed = Some(parse_value(k, value)?),
                "katz_alpha" => s.katz_alpha = Some(parse_value(k, value)?),
                "k" => s.k = Some(parse_list(k, value)?),
                "jobs" => s.jobs = Some(parse_value(k, value)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "benchmark" => s.benchmark = Some(parse_bool(k, value)?),
                "tol" => s.tol = Some(parse_value(k, value)?),
                "max_iter" => s.max_iter = Some(parse_value(k, value)?),
                _ if allow_manifest_keys && MANIFEST_KEYS.contains(&k) => {}
                _ => return Err(Error::InvalidParameter(format!("unknown configuration key '{k}'"))),
            }
        }
        Ok(s)
    }

    /// `self` wins over `lower` field by field. An explicit tau range in
    /// `self` also hides an explicit grid in `lower`.
    pub fn overlay(self, lower: Settings) -> Settings {
        let range_given = self.tau_max.is_some() || self.tau_step.is_some();
        Settings {
            graph: self.graph.or(lower.graph),
            format: self.format.or(lower.format),
            dataset: self.dataset.or(lower.dataset),
            models: self.models.or(lower.models),
            p: self.p.or(lower.p),
            metrics: self.metrics.or(lower.metrics),
            mode: self.mode.or(lower.mode),
            tau_grid: if range_given {
                self.tau_grid
            } else {
                self.tau_grid.or(lower.tau_grid)
            },
            tau_max: self.tau_max.or(lower.tau_max),
            tau_step: self.tau_step.or(lower.tau_step),
            trials: self.trials.or(lower.trials),
            seed: self.seed.or(lower.seed),
            katz_alpha: self.katz_alpha.or(lower.katz_alpha),
            k: self.k.or(lower.k),
            jobs: self.jobs.or(lower.jobs),
            out: self.out.or(lower.out),
            benchmark: self.benchmark.or(lower.benchmark),
            tol: self.tol.or(lower.tol),
            max_iter: self.max_iter.or(lower.max_iter),
        }
    }

    /// Fills defaults and validates. The dataset name defaults to the graph
    /// file stem.
    pub fn to_config(&self) -> Result<ExperimentConfig> {
        let defaults = ExperimentConfig::default();
        let specs = self.models.clone().unwrap_or_else(|| {
            vec![ModelSpec::Uniform(None), ModelSpec::BestConnected, ModelSpec::Benchmark]
        });
        let p_list = self.p.clone().unwrap_or_else(|| DEFAULT_UNIFORM_P.to_vec());
        let mut models = Vec::new();
        let mut include_benchmark = false;
        for spec in specs {
            match spec {
                ModelSpec::Uniform(Some(p)) => models.push(SurvivalModel::uniform(p)?),
                ModelSpec::Uniform(None) => {
                    for &p in &p_list {
                        models.push(SurvivalModel::uniform(p)?);
                    }
                }
                ModelSpec::BestConnected => models.push(SurvivalModel::BestConnected),
                ModelSpec::Benchmark => include_benchmark = true,
            }
        }
        for &p in &p_list {
            SurvivalModel::uniform(p)?;
        }
        if let Some(b) = self.benchmark {
            include_benchmark = b;
        }
        let tau = match &self.tau_grid {
            Some(grid) => grid.clone(),
            None => tau_grid(
                self.tau_max.unwrap_or(DEFAULT_TAU_MAX),
                self.tau_step.unwrap_or(DEFAULT_TAU_STEP),
            )?,
        };
        let dataset = self.dataset.clone().unwrap_or_else(|| {
            self.graph
                .as_ref()
                .and_then(|g| g.file_stem())
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        });
        let cfg = ExperimentConfig {
            dataset,
            models,
            include_benchmark,
            metrics: self.metrics.clone().unwrap_or(defaults.metrics),
            tau_grid: tau,
            trials: self.trials.unwrap_or(defaults.trials),
            katz_alpha: self.katz_alpha.unwrap_or(defaults.katz_alpha),
            seed: self.seed.unwrap_or(defaults.seed),
            netshield_k: self.k.clone().unwrap_or(defaults.netshield_k),
            mode: self.mode.unwrap_or(defaults.mode),
            jobs: self.jobs.unwrap_or(defaults.jobs),
            convergence: Convergence::new(
                self.tol.unwrap_or(defaults.convergence.tol),
                self.max_iter.unwrap_or(defaults.convergence.max_iter),
            )?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Serializes a configuration so that [`Settings::from_pairs`] followed by
/// [`Settings::to_config`] rebuilds it exactly.
pub fn config_to_pairs(cfg: &ExperimentConfig) -> Vec<(String, String)> {
    let models = cfg.models.iter().map(|m| match m {
        SurvivalModel::Uniform { p } => format!("uniform:{p}"),
        SurvivalModel::BestConnected => "best_connected".to_string(),
    });
    vec![
        ("dataset".into(), cfg.dataset.clone()),
        ("model".into(), join(models)),
        ("benchmark".into(), cfg.include_benchmark.to_string()),
        ("metric".into(), join(cfg.metrics.iter().map(|m| m.name()))),
        ("mode".into(), cfg.mode.name().into()),
        ("tau_grid".into(), join(&cfg.tau_grid)),
        ("trials".into(), cfg.trials.to_string()),
        ("seed".into(), cfg.seed.to_string()),
        ("katz_alpha".into(), cfg.katz_alpha.to_string()),
        ("k".into(), join(&cfg.netshield_k)),
        ("jobs".into(), cfg.jobs.to_string()),
        ("tol".into(), cfg.convergence.tol.to_string()),
        ("max_iter".into(), cfg.convergence.max_iter.to_string()),
    ]
}

/// Rebuilds the experiment configuration recorded in a manifest.
pub fn config_from_manifest(text: &str) -> Result<ExperimentConfig> {
    let kv = KeyValues::parse(text)?;
    Settings::from_pairs(&kv, true)?.to_config()
}
