// SPDX-License-Identifier: Apache-2.0

//! Argument parsing for the `netrobust` binary.
//!
//! Every run flag can also come from a `NETROBUST_*` environment variable.
//! Environment values count as command-line values, so the order is
//! flags/env, then the `--config` file, then built-in defaults.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::centrality::Metric;
use crate::config::{KeyValues, ModelSpec, Settings};
use crate::error::{Error, Result};
use crate::failure::SelectionMode;
use crate::graph::EdgeListFormat;
use crate::harness::ExperimentConfig;

#[derive(Debug, Parser)]
#[command(name = "netrobust", version, about = "Robustness of networks under targeted node removal")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Remove top-ranked failed nodes over a tau grid and record rho/gamma.
    Sweep(RunArgs),
    /// Compare NetShield against degree ranking on the failed node set.
    Netshield(RunArgs),
    /// Write all centrality scores of a graph.
    Centrality(RunArgs),
    /// Print node/edge counts, spectral radius and components.
    Info(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sweep(_) => "sweep",
            Command::Netshield(_) => "netshield",
            Command::Centrality(_) => "centrality",
            Command::Info(_) => "info",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Sweep(a) | Command::Netshield(a) | Command::Centrality(a) | Command::Info(a) => a,
        }
    }
}

fn probability(s: &str) -> std::result::Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is outside [0, 1]"))
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} must be positive"))
    }
}

fn model(s: &str) -> std::result::Result<ModelSpec, String> {
    let spec: ModelSpec = s.parse().map_err(|e: Error| e.to_string())?;
    if let ModelSpec::Uniform(Some(p)) = spec {
        probability(&p.to_string())?;
    }
    Ok(spec)
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Edge-list file.
    #[arg(long, env = "NETROBUST_GRAPH")]
    pub graph: Option<PathBuf>,
    /// konect, snap or plain.
    #[arg(long, env = "NETROBUST_FORMAT")]
    pub format: Option<EdgeListFormat>,
    /// Name recorded in outputs; defaults to the graph file stem.
    #[arg(long, env = "NETROBUST_DATASET")]
    pub dataset: Option<String>,
    /// uniform, uniform:<p>, bc or benchmark.
    #[arg(long, env = "NETROBUST_MODEL", value_delimiter = ',', value_parser = model)]
    pub model: Vec<ModelSpec>,
    /// Survival probabilities for plain `uniform`.
    #[arg(long, env = "NETROBUST_P", value_delimiter = ',', value_parser = probability)]
    pub p: Vec<f64>,
    #[arg(long, env = "NETROBUST_METRIC", value_delimiter = ',')]
    pub metric: Vec<Metric>,
    /// stochastic or deterministic.
    #[arg(long, env = "NETROBUST_MODE")]
    pub mode: Option<SelectionMode>,
    #[arg(long, env = "NETROBUST_TAU_MAX", value_parser = probability)]
    pub tau_max: Option<f64>,
    #[arg(long, env = "NETROBUST_TAU_STEP", value_parser = positive)]
    pub tau_step: Option<f64>,
    #[arg(long, env = "NETROBUST_TRIALS", value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    #[arg(long, env = "NETROBUST_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "NETROBUST_KATZ_ALPHA", value_parser = positive)]
    pub katz_alpha: Option<f64>,
    /// NetShield budgets, e.g. 1,2,5,10,15.
    #[arg(long, env = "NETROBUST_K", value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Vec<u64>,
    /// Maximum concurrent trials.
    #[arg(long, env = "NETROBUST_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Output directory.
    #[arg(long, env = "NETROBUST_OUT")]
    pub out: Option<PathBuf>,
    /// key=value file; an emitted manifest works too.
    #[arg(long, env = "NETROBUST_CONFIG")]
    pub config: Option<PathBuf>,
}

fn non_empty<T>(v: &[T]) -> Option<Vec<T>>
where
    T: Clone,
{
    (!v.is_empty()).then(|| v.to_vec())
}

impl RunArgs {
    pub fn to_settings(&self) -> Settings {
        Settings {
            graph: self.graph.clone(),
            format: self.format,
            dataset: self.dataset.clone(),
            models: non_empty(&self.model),
            p: non_empty(&self.p),
            metrics: non_empty(&self.metric),
            mode: self.mode,
            tau_grid: None,
            tau_max: self.tau_max,
            tau_step: self.tau_step,
            trials: self.trials.map(|t| t as usize),
            seed: self.seed,
            katz_alpha: self.katz_alpha,
            k: non_empty(&self.k).map(|k| k.into_iter().map(|x| x as usize).collect()),
            jobs: self.jobs.map(|j| j as usize),
            out: self.out.clone(),
            benchmark: None,
            tol: None,
            max_iter: None,
        }
    }

    /// Command-line settings over the config file, if any.
    pub fn resolve(&self) -> Result<Settings> {
        let cli = self.to_settings();
        match &self.config {
            Some(path) => {
                let file = Settings::from_pairs(&KeyValues::read(path)?, true)?;
                Ok(cli.overlay(file))
            }
            None => Ok(cli),
        }
    }
}

/// A parsed invocation with its resolved settings and configuration.
#[derive(Debug)]
pub struct Invocation {
    pub command: Command,
    pub settings: Settings,
    pub config: ExperimentConfig,
}

/// What the binary should do when parsing stops early.
#[derive(Debug)]
pub enum ParseOutcome {
    Run(Box<Invocation>),
    /// Help or version text; exit 0.
    Info(String),
    /// Usage error; exit 1.
    Usage(String),
    /// Config file could not be read; exit with the error's code.
    Failed(Error),
}

pub fn parse_cli<I, T>(args: I) -> ParseOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Info(e.to_string()),
                _ => ParseOutcome::Usage(e.to_string()),
            };
        }
    };
    let settings = match cli.command.args().resolve() {
        Ok(s) => s,
        Err(e @ Error::InvalidParameter(_)) => return ParseOutcome::Usage(format!("error: {e}")),
        Err(e) => return ParseOutcome::Failed(e),
    };
    match settings.to_config() {
        Ok(config) => ParseOutcome::Run(Box::new(Invocation {
            command: cli.command,
            settings,
            config,
        })),
        Err(e) => ParseOutcome::Usage(format!("error: {e}")),
    }
}
