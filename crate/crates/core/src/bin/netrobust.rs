// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use netrobust::centrality::compute;
use netrobust::cli::{parse_cli, Command, Invocation, ParseOutcome};
use netrobust::error::{Error, Result};
use netrobust::format::sig;
use netrobust::graph::{load_edge_list, EdgeListFormat, LoadReport};
use netrobust::harness::{benchmark_deviation, run_netshield_comparison, run_sweep, Observable};
use netrobust::output::{emit_results, file_checksum, Results, RunManifest};
use netrobust::spectral::{connected_components, spectral_radius};

const DEFAULT_OUT_DIR: &str = "netrobust-out";

fn load(path: &Path, format: EdgeListFormat) -> Result<LoadReport> {
    let file = File::open(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    load_edge_list(BufReader::new(file), format)
}

fn run(inv: Invocation) -> Result<()> {
    let started = Instant::now();
    let cfg = inv.config;
    let graph_path = inv
        .settings
        .graph
        .clone()
        .ok_or_else(|| Error::InvalidParameter("--graph is required".into()))?;
    let format = inv.settings.format.unwrap_or(EdgeListFormat::Plain);
    let out_dir = inv.settings.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));

    let report = load(&graph_path, format)?;
    let g = report.graph;
    let mut manifest = RunManifest::new(inv.command.name(), cfg.clone());
    manifest.graph_path = Some(graph_path.clone());
    manifest.format = format;
    manifest.dataset_checksum = Some(file_checksum(&graph_path)?);
    if report.dropped.self_loops > 0 {
        manifest
            .warnings
            .push(format!("dropped {} self-loops", report.dropped.self_loops));
    }
    if report.dropped.duplicates > 0 {
        manifest
            .warnings
            .push(format!("dropped {} duplicate edges", report.dropped.duplicates));
    }
    println!(
        "{}: {} nodes, {} edges",
        cfg.dataset,
        g.node_count(),
        g.edge_count()
    );

    match &inv.command {
        Command::Info(_) => {
            let lambda = spectral_radius(&g, cfg.convergence)?;
            let comps = connected_components(&g);
            println!("max degree: {}", g.max_degree());
            println!("spectral radius: {} ({} iterations)", sig(lambda.value, 8), lambda.iterations);
            println!(
                "components: {}, largest: {}",
                comps.component_count, comps.lcc_size
            );
            for w in &manifest.warnings {
                println!("warning: {w}");
            }
            return Ok(());
        }
        Command::Centrality(_) => {
            let vectors = cfg
                .metrics
                .iter()
                .map(|&m| compute(&g, m, cfg.katz_alpha, cfg.convergence))
                .collect::<Result<Vec<_>>>()?;
            manifest.duration_ms = started.elapsed().as_millis();
            let files = emit_results(Results::Centrality(&g, &vectors), &manifest, &out_dir)?;
            print_files(&files);
        }
        Command::Sweep(_) => {
            let sweep = run_sweep(&g, &cfg)?;
            if let Some(a) = sweep.katz_alpha {
                manifest.facts.push(("katz_alpha_used".into(), a.to_string()));
            }
            manifest.warnings.extend(sweep.warnings.iter().cloned());
            println!(
                "lambda1 = {}, lcc = {}",
                sig(sweep.baseline.lambda1, 8),
                sweep.baseline.lcc
            );
            let tau_last = sweep.tau_grid.last().copied().unwrap_or(0.0);
            println!("mean rho / gamma at tau = {tau_last}:");
            for cell in &sweep.cells {
                match cell.summary.last() {
                    Some(s) => println!(
                        "  {:<24} {:<12} rho {:<10} gamma {}",
                        cell.key.to_string(),
                        cell.key.metric.name(),
                        sig(s.mean_rho, 4),
                        sig(s.mean_gamma, 4)
                    ),
                    None => println!("  {} failed", cell.key),
                }
            }
            if cfg.include_benchmark {
                for obs in [Observable::Rho, Observable::Gamma] {
                    if let Ok(devs) = benchmark_deviation(&sweep, obs) {
                        for d in devs {
                            println!(
                                "  deviation {} {}: {}%",
                                d.model,
                                obs.name(),
                                sig(d.percent, 4)
                            );
                        }
                    }
                }
            }
            manifest.duration_ms = started.elapsed().as_millis();
            let files = emit_results(Results::Sweep(&sweep), &manifest, &out_dir)?;
            print_files(&files);
        }
        Command::Netshield(_) => {
            let cmp = run_netshield_comparison(&g, &cfg)?;
            manifest
                .facts
                .push(("netshield_coupling".into(), cmp.coupling.to_string()));
            manifest.warnings.extend(cmp.warnings.iter().cloned());
            for cell in &cmp.cells {
                match cell.beta() {
                    Some((mean, std)) => println!(
                        "  {:<16} k={:<4} beta {} (std {})",
                        cell.model.to_string(),
                        cell.k,
                        sig(mean, 4),
                        sig(std, 3)
                    ),
                    None => println!("  {} k={} skipped in all trials", cell.model, cell.k),
                }
            }
            manifest.duration_ms = started.elapsed().as_millis();
            let files = emit_results(Results::NetShield(&cmp), &manifest, &out_dir)?;
            print_files(&files);
        }
    }
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn print_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn main() -> ExitCode {
    match parse_cli(std::env::args_os()) {
        ParseOutcome::Info(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        ParseOutcome::Usage(text) => {
            eprint!("{text}");
            if !text.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(1)
        }
        ParseOutcome::Failed(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        ParseOutcome::Run(inv) => match run(*inv) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code())
            }
        },
    }
}
