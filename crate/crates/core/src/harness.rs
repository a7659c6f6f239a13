// SPDX-License-Identifier: Apache-2.0

//! Experiment sweeps, the NetShield-versus-degree comparison and the
//! benchmark deviation summary.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::centrality::{self, CentralityVector, Metric, DEFAULT_KATZ_ALPHA};
use crate::error::{Error, Result};
use crate::failure::{
    rank_failed, run_trial_curve, sample_failures, Baseline, SelectionMode, SurvivalModel, TrialCurve,
};
use crate::graph::{Graph, NodeSet};
use crate::netshield::ShieldBasis;
use crate::spectral::{connected_components, spectral_radius, Convergence};

pub const DEFAULT_TAU_MAX: f64 = 0.18;
pub const DEFAULT_TAU_STEP: f64 = 0.02;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_NETSHIELD_K: [usize; 5] = [1, 2, 5, 10, 15];

/// Fraction of `1/lambda1` used for Katz when the requested alpha is too large.
pub const KATZ_FALLBACK_FRACTION: f64 = 0.9;

/// How NetShield and degree selections share failures, recorded in outputs.
pub const NETSHIELD_COUPLING: &str = "shared_failed_set";

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: String,
    pub models: Vec<SurvivalModel>,
    /// Adds the always-successful degree removal (uniform p = 0) as its own row.
    pub include_benchmark: bool,
    pub metrics: Vec<Metric>,
    pub tau_grid: Vec<f64>,
    pub trials: usize,
    pub katz_alpha: f64,
    pub seed: u64,
    pub netshield_k: Vec<usize>,
    pub mode: SelectionMode,
    /// Maximum number of trials evaluated concurrently.
    pub jobs: usize,
    pub convergence: Convergence,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset: String::new(),
            models: default_models(),
            include_benchmark: true,
            metrics: Metric::ALL.to_vec(),
            tau_grid: tau_grid(DEFAULT_TAU_MAX, DEFAULT_TAU_STEP).expect("default grid"),
            trials: DEFAULT_TRIALS,
            katz_alpha: DEFAULT_KATZ_ALPHA,
            seed: 1,
            netshield_k: DEFAULT_NETSHIELD_K.to_vec(),
            mode: SelectionMode::Stochastic,
            jobs: 1,
            convergence: Convergence::default(),
        }
    }
}

pub fn default_models() -> Vec<SurvivalModel> {
    vec![
        SurvivalModel::Uniform { p: 0.1 },
        SurvivalModel::Uniform { p: 0.3 },
        SurvivalModel::Uniform { p: 0.5 },
        SurvivalModel::BestConnected,
    ]
}

/// `0, step, 2 step, ...` up to `max` inclusive, rounded to 12 decimals.
pub fn tau_grid(max: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&max) || !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tau grid needs 0 <= max <= 1 and step > 0 (got max {max}, step {step})"
        )));
    }
    let count = (max / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|k| ((k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.tau_grid.is_empty() {
            return bad("tau grid is empty".into());
        }
        if self.tau_grid.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return bad("tau values must lie in [0, 1]".into());
        }
        if self.tau_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("tau grid must be strictly increasing".into());
        }
        if !(self.katz_alpha > 0.0 && self.katz_alpha.is_finite()) {
            return bad(format!("Katz alpha must be positive, got {}", self.katz_alpha));
        }
        for m in &self.models {
            if let SurvivalModel::Uniform { p } = m {
                SurvivalModel::uniform(*p)?;
            }
        }
        if self.netshield_k.contains(&0) {
            return bad("NetShield k values must be >= 1".into());
        }
        if self.jobs == 0 {
            return bad("jobs must be >= 1".into());
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
    }
}

/// Seed of trial `trial`, derived from the master seed by a counter-based
/// mix (splitmix64). Every cell uses the same seed for the same trial, so
/// metrics are compared under identical failure samples.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(trial as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellKey {
    pub model: SurvivalModel,
    pub benchmark: bool,
    pub metric: Metric,
}

impl CellKey {
    pub fn model_label(&self) -> &'static str {
        if self.benchmark {
            "benchmark"
        } else {
            self.model.name()
        }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.benchmark {
            write!(f, "benchmark/{}", self.metric)
        } else {
            write!(f, "{}/{}", self.model, self.metric)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub curve: TrialCurve,
}

/// Sample mean and standard deviation (n - 1 denominator; 0 for one value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauSummary {
    pub tau: f64,
    pub requested_count: usize,
    pub trials: usize,
    pub mean_removed: f64,
    pub mean_lambda: f64,
    pub std_lambda: f64,
    pub mean_lcc: f64,
    pub std_lcc: f64,
    pub mean_rho: f64,
    pub std_rho: f64,
    pub mean_gamma: f64,
    pub std_gamma: f64,
}

impl TauSummary {
    /// Aggregates grid point `idx` over the given trials.
    pub fn from_trials(records: &[TrialRecord], idx: usize) -> TauSummary {
        let pick = |f: &dyn Fn(&crate::failure::TrialPoint) -> f64| -> Vec<f64> {
            records.iter().map(|r| f(&r.curve.points[idx])).collect()
        };
        let first = records[0].curve.points[idx];
        let (mean_removed, _) = mean_std(&pick(&|p| p.actually_removed as f64));
        let (mean_lambda, std_lambda) = mean_std(&pick(&|p| p.lambda_tilde));
        let (mean_lcc, std_lcc) = mean_std(&pick(&|p| p.lcc_tilde as f64));
        let (mean_rho, std_rho) = mean_std(&pick(&|p| p.rho));
        let (mean_gamma, std_gamma) = mean_std(&pick(&|p| p.gamma));
        TauSummary {
            tau: first.tau,
            requested_count: first.requested_count,
            trials: records.len(),
            mean_removed,
            mean_lambda,
            std_lambda,
            mean_lcc,
            std_lcc,
            mean_rho,
            std_rho,
            mean_gamma,
            std_gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub key: CellKey,
    pub trials: Vec<TrialRecord>,
    /// One entry per tau; empty when the cell failed.
    pub summary: Vec<TauSummary>,
    pub failure: Option<String>,
}

impl CellResult {
    /// Requested removals that could not be made, summed over trials and grid.
    pub fn shortfall(&self) -> usize {
        self.trials
            .iter()
            .flat_map(|r| r.curve.points.iter())
            .map(|p| p.requested_count - p.actually_removed)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub dataset: String,
    pub mode: SelectionMode,
    pub tau_grid: Vec<f64>,
    pub node_count: usize,
    pub baseline: Baseline,
    /// Katz alpha actually used, when Katz was requested and computable.
    pub katz_alpha: Option<f64>,
    pub warnings: Vec<String>,
    pub cells: Vec<CellResult>,
}

impl SweepResult {
    pub fn cell(&self, label: &str, p: Option<f64>, metric: Metric) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.key.model_label() == label && c.key.metric == metric && c.key.model.p() == p)
    }
}

/// Katz alpha to use on a graph with spectral radius `lambda1`. Returns
/// the value and a warning when the requested one had to be replaced.
pub fn effective_katz_alpha(requested: f64, lambda1: f64) -> (f64, Option<String>) {
    if lambda1 > 0.0 && requested * lambda1 >= 1.0 {
        let alpha = KATZ_FALLBACK_FRACTION / lambda1;
        let warning = format!(
            "Katz alpha {requested} violates alpha < 1/lambda1 (lambda1 = {lambda1:.6}); using {KATZ_FALLBACK_FRACTION}/lambda1 = {alpha:.6e}"
        );
        (alpha, Some(warning))
    } else {
        (requested, None)
    }
}

struct PreparedGraph {
    baseline: Baseline,
    katz_alpha: Option<f64>,
    scores: Vec<(Metric, std::result::Result<CentralityVector, String>)>,
    warnings: Vec<String>,
}

fn prepare(g: &Graph, cfg: &ExperimentConfig, metrics: &[Metric]) -> Result<PreparedGraph> {
    if g.node_count() == 0 || g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet("experiment"));
    }
    let baseline = Baseline::measure(g, cfg.convergence)?;
    let mut warnings = Vec::new();
    let mut katz_alpha = None;
    let mut scores = Vec::new();
    for &metric in metrics {
        let alpha = if metric == Metric::Katz {
            let (a, w) = effective_katz_alpha(cfg.katz_alpha, baseline.lambda1);
            warnings.extend(w);
            katz_alpha = Some(a);
            a
        } else {
            cfg.katz_alpha
        };
        let phi = centrality::compute(g, metric, alpha, cfg.convergence).map_err(|e| e.to_string());
        if let Err(e) = &phi {
            warnings.push(format!("{metric} centrality failed: {e}"));
        }
        scores.push((metric, phi));
    }
    Ok(PreparedGraph {
        baseline,
        katz_alpha,
        scores,
        warnings,
    })
}

/// Runs every (model, metric) cell over the tau grid. Centralities and the
/// baseline are computed once on `g`; each trial shares one failure sample
/// across the grid.
pub fn run_sweep(g: &Graph, cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let mut metrics = cfg.metrics.clone();
    if cfg.include_benchmark && !metrics.contains(&Metric::Degree) {
        metrics.push(Metric::Degree);
    }
    let prepared = prepare(g, cfg, &metrics)?;
    let mut warnings = prepared.warnings.clone();

    let mut keys: Vec<CellKey> = Vec::new();
    for &model in &cfg.models {
        for &metric in &cfg.metrics {
            keys.push(CellKey {
                model,
                benchmark: false,
                metric,
            });
        }
    }
    if cfg.include_benchmark {
        keys.push(CellKey {
            model: SurvivalModel::benchmark(),
            benchmark: true,
            metric: Metric::Degree,
        });
    }

    let scores_for = |metric: Metric| {
        prepared
            .scores
            .iter()
            .find(|(m, _)| *m == metric)
            .map(|(_, s)| s)
            .expect("metric prepared")
    };

    // A cell whose trials cannot differ is evaluated once and replicated.
    let seed_free = |key: &CellKey| {
        cfg.mode == SelectionMode::DeterministicScore
            || matches!(key.model, SurvivalModel::Uniform { p } if p == 0.0)
    };

    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for (ci, key) in keys.iter().enumerate() {
        if scores_for(key.metric).is_err() {
            continue;
        }
        let distinct = if seed_free(key) { 1 } else { cfg.trials };
        jobs.extend((0..distinct).map(|t| (ci, t)));
    }

    let pool = cfg.pool()?;
    let curves: Vec<Result<TrialCurve>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(ci, t)| {
                let key = keys[ci];
                let phi = scores_for(key.metric).as_ref().expect("filtered above");
                run_trial_curve(
                    g,
                    phi,
                    key.model,
                    cfg.mode,
                    trial_seed(cfg.seed, t),
                    &cfg.tau_grid,
                    prepared.baseline,
                    cfg.convergence,
                )
            })
            .collect()
    });

    let mut per_cell: Vec<Vec<(usize, Result<TrialCurve>)>> = keys.iter().map(|_| Vec::new()).collect();
    for (&(ci, t), curve) in jobs.iter().zip(curves) {
        per_cell[ci].push((t, curve));
    }

    let mut cells = Vec::with_capacity(keys.len());
    for (ci, key) in keys.iter().enumerate() {
        let mut failure = scores_for(key.metric).as_ref().err().map(|e| format!("centrality: {e}"));
        let mut trials = Vec::new();
        let computed = std::mem::take(&mut per_cell[ci]);
        let replicate = seed_free(key);
        for (t, curve) in computed {
            match curve {
                Ok(curve) => {
                    if replicate {
                        trials.extend((0..cfg.trials).map(|t| TrialRecord {
                            trial: t,
                            seed: trial_seed(cfg.seed, t),
                            curve: curve.clone(),
                        }));
                    } else {
                        trials.push(TrialRecord {
                            trial: t,
                            seed: trial_seed(cfg.seed, t),
                            curve,
                        });
                    }
                }
                Err(e) => {
                    failure.get_or_insert_with(|| format!("trial {t}: {e}"));
                }
            }
        }
        let summary = if failure.is_none() {
            (0..cfg.tau_grid.len())
                .map(|idx| TauSummary::from_trials(&trials, idx))
                .collect()
        } else {
            warnings.push(format!("cell {key} failed: {}", failure.as_deref().unwrap_or("")));
            Vec::new()
        };
        let degenerate = trials.iter().any(|r| r.curve.degenerate);
        let cell = CellResult {
            key: *key,
            trials,
            summary,
            failure,
        };
        let shortfall = cell.shortfall();
        if shortfall > 0 {
            warnings.push(format!("cell {key}: {shortfall} requested removals not made (too few failed nodes)"));
        }
        if degenerate {
            warnings.push(format!("cell {key}: all scores zero, ranking decided by node index"));
        }
        cells.push(cell);
    }

    Ok(SweepResult {
        dataset: cfg.dataset.clone(),
        mode: cfg.mode,
        tau_grid: cfg.tau_grid.clone(),
        node_count: g.node_count(),
        baseline: prepared.baseline,
        katz_alpha: prepared.katz_alpha,
        warnings,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetShieldTrial {
    pub trial: usize,
    pub seed: u64,
    pub skipped: bool,
    pub failed_count: usize,
    pub lambda_netshield: f64,
    pub lambda_degree: f64,
    pub lcc_netshield: usize,
    pub lcc_degree: usize,
    /// `lambda_netshield / lambda_degree`.
    pub beta: f64,
    /// `lcc_netshield / lcc_degree`.
    pub gamma_ratio: f64,
    pub same_selection: bool,
}

impl NetShieldTrial {
    fn skipped(trial: usize, seed: u64, failed_count: usize) -> Self {
        NetShieldTrial {
            trial,
            seed,
            skipped: true,
            failed_count,
            lambda_netshield: f64::NAN,
            lambda_degree: f64::NAN,
            lcc_netshield: 0,
            lcc_degree: 0,
            beta: f64::NAN,
            gamma_ratio: f64::NAN,
            same_selection: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetShieldCell {
    pub model: SurvivalModel,
    pub k: usize,
    pub trials: Vec<NetShieldTrial>,
}

impl NetShieldCell {
    pub fn used(&self) -> impl Iterator<Item = &NetShieldTrial> {
        self.trials.iter().filter(|t| !t.skipped)
    }

    pub fn skipped_count(&self) -> usize {
        self.trials.iter().filter(|t| t.skipped).count()
    }

    /// Mean and std of beta over non-skipped trials; `None` if all skipped.
    pub fn beta(&self) -> Option<(f64, f64)> {
        let v: Vec<f64> = self.used().map(|t| t.beta).collect();
        (!v.is_empty()).then(|| mean_std(&v))
    }

    pub fn gamma_ratio(&self) -> Option<(f64, f64)> {
        let v: Vec<f64> = self.used().map(|t| t.gamma_ratio).collect();
        (!v.is_empty()).then(|| mean_std(&v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetShieldComparison {
    pub dataset: String,
    pub baseline: Baseline,
    pub coupling: &'static str,
    pub warnings: Vec<String>,
    pub cells: Vec<NetShieldCell>,
}

impl NetShieldComparison {
    pub fn cell(&self, model: SurvivalModel, k: usize) -> Option<&NetShieldCell> {
        self.cells.iter().find(|c| c.model == model && c.k == k)
    }
}

/// Ratio of two post-removal observables. 0/0 counts as parity.
fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

fn measure_removal(g: &Graph, set: &[u32], conv: Convergence) -> Result<(f64, usize)> {
    let sub = g.delete_nodes(&NodeSet::from_iter(set.iter().map(|&v| v as usize)))?;
    Ok((
        spectral_radius(&sub.graph, conv)?.value,
        connected_components(&sub.graph).lcc_size,
    ))
}

/// For each model, trial and k: both selectors pick among the same failed
/// nodes; degree takes the top k by degree, NetShield runs its greedy scan
/// restricted to failed nodes using the eigenpair of the intact graph.
pub fn run_netshield_comparison(g: &Graph, cfg: &ExperimentConfig) -> Result<NetShieldComparison> {
    cfg.validate()?;
    if cfg.netshield_k.is_empty() {
        return Err(Error::InvalidParameter("NetShield k list is empty".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet("NetShield comparison"));
    }
    let baseline = Baseline::measure(g, cfg.convergence)?;
    let basis = ShieldBasis::compute(g, cfg.convergence)?;
    let degree = centrality::degree_centrality(g);
    let k_max = *cfg.netshield_k.iter().max().expect("nonempty");

    let jobs: Vec<(usize, usize)> = (0..cfg.models.len())
        .flat_map(|mi| (0..cfg.trials).map(move |t| (mi, t)))
        .collect();
    let pool = cfg.pool()?;
    let results: Vec<Result<Vec<NetShieldTrial>>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(mi, t)| {
                let seed = trial_seed(cfg.seed, t);
                let failed = sample_failures(cfg.models[mi], g, seed)?;
                let mask = failed.mask(g.node_count())?;
                let by_degree = rank_failed(&degree, &failed);
                let by_shield = basis.greedy(g, k_max, Some(&mask));
                cfg.netshield_k
                    .iter()
                    .map(|&k| {
                        if failed.len() < k {
                            return Ok(NetShieldTrial::skipped(t, seed, failed.len()));
                        }
                        let d_set = &by_degree[..k];
                        let ns_set = &by_shield[..k];
                        let mut a = d_set.to_vec();
                        let mut b = ns_set.to_vec();
                        a.sort_unstable();
                        b.sort_unstable();
                        let same = a == b;
                        let (lambda_degree, lcc_degree) = measure_removal(g, d_set, cfg.convergence)?;
                        let (lambda_netshield, lcc_netshield) = if same {
                            (lambda_degree, lcc_degree)
                        } else {
                            measure_removal(g, ns_set, cfg.convergence)?
                        };
                        Ok(NetShieldTrial {
                            trial: t,
                            seed,
                            skipped: false,
                            failed_count: failed.len(),
                            lambda_netshield,
                            lambda_degree,
                            lcc_netshield,
                            lcc_degree,
                            beta: ratio(lambda_netshield, lambda_degree),
                            gamma_ratio: ratio(lcc_netshield as f64, lcc_degree as f64),
                            same_selection: same,
                        })
                    })
                    .collect()
            })
            .collect()
    });

    let mut cells: Vec<NetShieldCell> = cfg
        .models
        .iter()
        .flat_map(|&model| {
            cfg.netshield_k.iter().map(move |&k| NetShieldCell {
                model,
                k,
                trials: Vec::new(),
            })
        })
        .collect();
    let nk = cfg.netshield_k.len();
    for (&(mi, _), res) in jobs.iter().zip(results) {
        for (ki, trial) in res?.into_iter().enumerate() {
            cells[mi * nk + ki].trials.push(trial);
        }
    }
    let mut warnings = Vec::new();
    for c in &cells {
        let skipped = c.skipped_count();
        if skipped > 0 {
            warnings.push(format!(
                "netshield {} k={}: {skipped} of {} trials skipped (fewer than k failed nodes)",
                c.model,
                c.k,
                c.trials.len()
            ));
        }
    }
    Ok(NetShieldComparison {
        dataset: cfg.dataset.clone(),
        baseline,
        coupling: NETSHIELD_COUPLING,
        warnings,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Rho,
    Gamma,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::Rho => "rho",
            Observable::Gamma => "gamma",
        }
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" | "effectiveness" => Ok(Observable::Rho),
            "gamma" | "coverage" => Ok(Observable::Gamma),
            other => Err(Error::InvalidParameter(format!("unknown observable '{other}'"))),
        }
    }
}

/// `100 * mean over tau > 0 of |bench - model| / model`.
///
/// A point where the model curve is 0 contributes 0 if the benchmark is 0
/// too and infinity otherwise.
pub fn deviation_percent(taus: &[f64], bench: &[f64], model: &[f64]) -> f64 {
    let terms: Vec<f64> = taus
        .iter()
        .zip(bench.iter().zip(model))
        .filter(|(t, _)| **t > 0.0)
        .map(|(_, (&b, &m))| {
            if m == 0.0 {
                if b == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (b - m).abs() / m
            }
        })
        .collect();
    if terms.is_empty() {
        return 0.0;
    }
    100.0 * terms.iter().sum::<f64>() / terms.len() as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub model: SurvivalModel,
    pub observable: Observable,
    pub percent: f64,
}

/// Deviation of the benchmark degree curve from each probabilistic degree
/// curve of the sweep.
pub fn benchmark_deviation(sweep: &SweepResult, observable: Observable) -> Result<Vec<Deviation>> {
    let pick = |s: &TauSummary| match observable {
        Observable::Rho => s.mean_rho,
        Observable::Gamma => s.mean_gamma,
    };
    let bench = sweep
        .cells
        .iter()
        .find(|c| c.key.benchmark && c.key.metric == Metric::Degree && !c.summary.is_empty())
        .ok_or(Error::MissingBenchmark)?;
    let bench_curve: Vec<f64> = bench.summary.iter().map(pick).collect();
    Ok(sweep
        .cells
        .iter()
        .filter(|c| !c.key.benchmark && c.key.metric == Metric::Degree && !c.summary.is_empty())
        .map(|c| {
            let curve: Vec<f64> = c.summary.iter().map(pick).collect();
            Deviation {
                model: c.key.model,
                observable,
                percent: deviation_percent(&sweep.tau_grid, &bench_curve, &curve),
            }
        })
        .collect())
}
