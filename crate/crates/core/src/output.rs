// SPDX-License-Identifier: Apache-2.0

//! Result files: per-trial and aggregate CSVs plus a run manifest.
//!
//! Every output directory holds exactly one `manifest.txt`, which lists the
//! CSV files written next to it. Reals are written with 12 significant
//! digits, `.` as decimal separator and `\n` line endings, so identical
//! inputs give byte-identical CSVs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::{config_to_pairs, KeyValues};
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::graph::{EdgeListFormat, Graph};
use crate::harness::{
    benchmark_deviation, ExperimentConfig, NetShieldComparison, Observable, SweepResult,
};
use crate::centrality::CentralityVector;

pub const MANIFEST_FILE: &str = "manifest.txt";
pub const SWEEP_TRIALS_FILE: &str = "sweep_trials.csv";
pub const SWEEP_SUMMARY_FILE: &str = "sweep_summary.csv";
pub const DEVIATION_FILE: &str = "benchmark_deviation.csv";
pub const NETSHIELD_TRIALS_FILE: &str = "netshield_trials.csv";
pub const NETSHIELD_SUMMARY_FILE: &str = "netshield_summary.csv";
pub const CENTRALITY_FILE: &str = "centrality.csv";

pub const SWEEP_TRIAL_COLUMNS: [&str; 16] = [
    "dataset",
    "mode",
    "model",
    "p",
    "metric",
    "tau",
    "trial",
    "seed",
    "requested_removed",
    "actually_removed",
    "lambda1_base",
    "lambda1_tilde",
    "lcc_base",
    "lcc_tilde",
    "rho",
    "gamma",
];

pub const SWEEP_SUMMARY_COLUMNS: [&str; 20] = [
    "dataset",
    "mode",
    "model",
    "p",
    "metric",
    "tau",
    "trials",
    "requested_removed",
    "mean_actually_removed",
    "lambda1_base",
    "lcc_base",
    "mean_lambda1_tilde",
    "std_lambda1_tilde",
    "mean_lcc_tilde",
    "std_lcc_tilde",
    "mean_rho",
    "std_rho",
    "mean_gamma",
    "std_gamma",
    "status",
];

pub const NETSHIELD_TRIAL_COLUMNS: [&str; 8] =
    ["dataset", "model", "p", "k", "trial", "beta", "gamma_ratio", "skipped_flag"];

pub const NETSHIELD_SUMMARY_COLUMNS: [&str; 10] = [
    "dataset",
    "model",
    "p",
    "k",
    "trials_used",
    "trials_skipped",
    "mean_beta",
    "std_beta",
    "mean_gamma_ratio",
    "std_gamma_ratio",
];

/// Provenance of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub graph_path: Option<PathBuf>,
    pub format: EdgeListFormat,
    pub config: ExperimentConfig,
    pub tool_version: String,
    /// `sha256:<hex>` of the dataset file bytes.
    pub dataset_checksum: Option<String>,
    pub duration_ms: u128,
    /// Extra `key=value` facts, e.g. the Katz alpha actually used.
    pub facts: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config: ExperimentConfig) -> Self {
        RunManifest {
            command: command.to_string(),
            graph_path: None,
            format: EdgeListFormat::Plain,
            config,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            dataset_checksum: None,
            duration_ms: 0,
            facts: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn render(&self, files: &[PathBuf]) -> String {
        let mut kv = KeyValues::default();
        kv.push("command", &self.command);
        kv.push("tool_version", &self.tool_version);
        if let Some(p) = &self.graph_path {
            kv.push("graph", &p.display().to_string());
        }
        kv.push("format", &self.format.to_string());
        if let Some(c) = &self.dataset_checksum {
            kv.push("dataset_checksum", c);
        }
        kv.push("duration_ms", &self.duration_ms.to_string());
        for (k, v) in config_to_pairs(&self.config) {
            kv.push(&k, &v);
        }
        for (k, v) in &self.facts {
            kv.push(k, v);
        }
        for w in &self.warnings {
            kv.push("warning", w);
        }
        for f in files {
            if let Some(name) = f.file_name() {
                kv.push("file", &name.to_string_lossy());
            }
        }
        kv.render()
    }
}

/// SHA-256 of a file, formatted as `sha256:<hex>`.
pub fn file_checksum(path: &Path) -> Result<String> {
    use sha2::{Digest, Sha256};
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(format!("sha256:{hex}"))
}

/// Anything [`emit_results`] can write.
pub enum Results<'a> {
    Sweep(&'a SweepResult),
    NetShield(&'a NetShieldComparison),
    Centrality(&'a Graph, &'a [CentralityVector]),
}

fn writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error {
    let path = path.to_path_buf();
    move |source| Error::Csv {
        path: path.clone(),
        source,
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// Writes the CSVs for `result` and the manifest into `out_dir`, creating it
/// if needed. Returns the paths written, manifest last.
pub fn emit_results(result: Results<'_>, manifest: &RunManifest, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut files = match result {
        Results::Sweep(s) => write_sweep(s, out_dir)?,
        Results::NetShield(c) => write_netshield(c, out_dir)?,
        Results::Centrality(g, vectors) => write_centrality(g, vectors, out_dir)?,
    };
    let path = out_dir.join(MANIFEST_FILE);
    let mut f = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    f.write_all(manifest.render(&files).as_bytes())
        .map_err(|e| Error::io(&path, e))?;
    files.push(path);
    Ok(files)
}

fn write_sweep(s: &SweepResult, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let trials_path = out_dir.join(SWEEP_TRIALS_FILE);
    let err = csv_err(&trials_path);
    let mut w = writer(&trials_path)?;
    w.write_record(SWEEP_TRIAL_COLUMNS).map_err(&err)?;
    for cell in &s.cells {
        for rec in &cell.trials {
            for p in &rec.curve.points {
                w.write_record([
                    s.dataset.clone(),
                    s.mode.name().to_string(),
                    cell.key.model_label().to_string(),
                    opt(cell.key.model.p()),
                    cell.key.metric.name().to_string(),
                    sig12(p.tau),
                    rec.trial.to_string(),
                    rec.seed.to_string(),
                    p.requested_count.to_string(),
                    p.actually_removed.to_string(),
                    sig12(s.baseline.lambda1),
                    sig12(p.lambda_tilde),
                    s.baseline.lcc.to_string(),
                    p.lcc_tilde.to_string(),
                    sig12(p.rho),
                    sig12(p.gamma),
                ])
                .map_err(&err)?;
            }
        }
    }
    w.flush().map_err(|e| Error::io(&trials_path, e))?;

    let summary_path = out_dir.join(SWEEP_SUMMARY_FILE);
    let err = csv_err(&summary_path);
    let mut w = writer(&summary_path)?;
    w.write_record(SWEEP_SUMMARY_COLUMNS).map_err(&err)?;
    for cell in &s.cells {
        let ident = [
            s.dataset.clone(),
            s.mode.name().to_string(),
            cell.key.model_label().to_string(),
            opt(cell.key.model.p()),
            cell.key.metric.name().to_string(),
        ];
        if let Some(reason) = &cell.failure {
            for &tau in &s.tau_grid {
                let mut row: Vec<String> = ident.to_vec();
                row.push(sig12(tau));
                row.extend(std::iter::repeat_n(String::new(), 13));
                row.push(format!("failed: {reason}"));
                w.write_record(&row).map_err(&err)?;
            }
            continue;
        }
        for t in &cell.summary {
            let mut row: Vec<String> = ident.to_vec();
            row.extend([
                sig12(t.tau),
                t.trials.to_string(),
                t.requested_count.to_string(),
                sig12(t.mean_removed),
                sig12(s.baseline.lambda1),
                s.baseline.lcc.to_string(),
                sig12(t.mean_lambda),
                sig12(t.std_lambda),
                sig12(t.mean_lcc),
                sig12(t.std_lcc),
                sig12(t.mean_rho),
                sig12(t.std_rho),
                sig12(t.mean_gamma),
                sig12(t.std_gamma),
                "ok".to_string(),
            ]);
            w.write_record(&row).map_err(&err)?;
        }
    }
    w.flush().map_err(|e| Error::io(&summary_path, e))?;

    let mut files = vec![trials_path, summary_path];
    if s.cells.iter().any(|c| c.key.benchmark && !c.summary.is_empty()) {
        let path = out_dir.join(DEVIATION_FILE);
        let err = csv_err(&path);
        let mut w = writer(&path)?;
        w.write_record(["dataset", "mode", "model", "p", "observable", "deviation_percent"])
            .map_err(&err)?;
        for obs in [Observable::Rho, Observable::Gamma] {
            for d in benchmark_deviation(s, obs)? {
                w.write_record([
                    s.dataset.clone(),
                    s.mode.name().to_string(),
                    d.model.name().to_string(),
                    opt(d.model.p()),
                    obs.name().to_string(),
                    sig12(d.percent),
                ])
                .map_err(&err)?;
            }
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        files.push(path);
    }
    Ok(files)
}

fn write_netshield(c: &NetShieldComparison, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let trials_path = out_dir.join(NETSHIELD_TRIALS_FILE);
    let err = csv_err(&trials_path);
    let mut w = writer(&trials_path)?;
    w.write_record(NETSHIELD_TRIAL_COLUMNS).map_err(&err)?;
    for cell in &c.cells {
        for t in &cell.trials {
            let (beta, gamma) = if t.skipped {
                (String::new(), String::new())
            } else {
                (sig12(t.beta), sig12(t.gamma_ratio))
            };
            w.write_record([
                c.dataset.clone(),
                cell.model.name().to_string(),
                opt(cell.model.p()),
                cell.k.to_string(),
                t.trial.to_string(),
                beta,
                gamma,
                u8::from(t.skipped).to_string(),
            ])
            .map_err(&err)?;
        }
    }
    w.flush().map_err(|e| Error::io(&trials_path, e))?;

    let summary_path = out_dir.join(NETSHIELD_SUMMARY_FILE);
    let err = csv_err(&summary_path);
    let mut w = writer(&summary_path)?;
    w.write_record(NETSHIELD_SUMMARY_COLUMNS).map_err(&err)?;
    for cell in &c.cells {
        let (mb, sb) = cell.beta().map_or((None, None), |(m, s)| (Some(m), Some(s)));
        let (mg, sg) = cell.gamma_ratio().map_or((None, None), |(m, s)| (Some(m), Some(s)));
        w.write_record([
            c.dataset.clone(),
            cell.model.name().to_string(),
            opt(cell.model.p()),
            cell.k.to_string(),
            cell.used().count().to_string(),
            cell.skipped_count().to_string(),
            opt(mb),
            opt(sb),
            opt(mg),
            opt(sg),
        ])
        .map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(&summary_path, e))?;
    Ok(vec![trials_path, summary_path])
}

fn write_centrality(g: &Graph, vectors: &[CentralityVector], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let path = out_dir.join(CENTRALITY_FILE);
    let err = csv_err(&path);
    let mut w = writer(&path)?;
    w.write_record(["node_id", "metric", "score"]).map_err(&err)?;
    for v in vectors {
        for (i, s) in v.scores.iter().enumerate() {
            w.write_record([g.label_of(i).to_string(), v.metric.name().to_string(), sig12(*s)])
                .map_err(&err)?;
        }
    }
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(vec![path])
}
