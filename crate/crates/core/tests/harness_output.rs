use std::fs;

use netrobust::centrality::{compute, Metric};
use netrobust::config::config_from_manifest;
use netrobust::failure::{SelectionMode, SurvivalModel};
use netrobust::generators::{generate_synthetic, SyntheticKind};
use netrobust::graph::Graph;
use netrobust::harness::{
    benchmark_deviation, run_netshield_comparison, run_sweep, trial_seed, ExperimentConfig, Observable,
};
use netrobust::output::*;
use netrobust::spectral::Convergence;

fn triangle() -> Graph {
    generate_synthetic(SyntheticKind::Complete { n: 3 }, 0).unwrap()
}

fn ba(n: usize, seed: u64) -> Graph {
    generate_synthetic(SyntheticKind::BarabasiAlbert { n, m_attach: 2 }, seed).unwrap()
}

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        dataset: "ba".into(),
        models: vec![
            SurvivalModel::uniform(0.1).unwrap(),
            SurvivalModel::uniform(0.5).unwrap(),
            SurvivalModel::BestConnected,
        ],
        include_benchmark: false,
        metrics: Metric::ALL.to_vec(),
        tau_grid: vec![0.0, 0.05, 0.1, 0.2],
        trials: 3,
        netshield_k: vec![1, 3],
        ..Default::default()
    }
}

fn data_rows(path: &std::path::Path) -> Vec<String> {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.ends_with('\n') && !text.contains('\r'));
    text.lines().skip(1).map(str::to_string).collect()
}

#[test]
fn empty_sweep_writes_headers_and_manifest() {
    let cfg = ExperimentConfig {
        models: vec![],
        include_benchmark: false,
        ..small_config()
    };
    let sweep = run_sweep(&triangle(), &cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = emit_results(Results::Sweep(&sweep), &RunManifest::new("sweep", cfg), dir.path()).unwrap();
    let names: Vec<_> = files.iter().map(|f| f.file_name().unwrap().to_str().unwrap()).collect();
    assert_eq!(names, [SWEEP_TRIALS_FILE, SWEEP_SUMMARY_FILE, MANIFEST_FILE]);
    let trials = fs::read_to_string(dir.path().join(SWEEP_TRIALS_FILE)).unwrap();
    assert_eq!(trials, format!("{}\n", SWEEP_TRIAL_COLUMNS.join(",")));
    assert!(data_rows(&dir.path().join(SWEEP_SUMMARY_FILE)).is_empty());
}

#[test]
fn single_trial_at_tau_zero_has_unit_ratios() {
    let cfg = ExperimentConfig {
        models: vec![SurvivalModel::uniform(0.1).unwrap()],
        metrics: vec![Metric::Degree],
        tau_grid: vec![0.0],
        trials: 1,
        ..small_config()
    };
    let sweep = run_sweep(&triangle(), &cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_results(Results::Sweep(&sweep), &RunManifest::new("sweep", cfg), dir.path()).unwrap();
    let rows = data_rows(&dir.path().join(SWEEP_TRIALS_FILE));
    assert_eq!(rows.len(), 1);
    let fields: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(fields[14], "1");
    assert_eq!(fields[15], "1");
}

#[test]
fn triangle_row_count() {
    let cfg = small_config();
    let sweep = run_sweep(&triangle(), &cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_results(Results::Sweep(&sweep), &RunManifest::new("sweep", cfg.clone()), dir.path()).unwrap();
    let rows = data_rows(&dir.path().join(SWEEP_TRIALS_FILE));
    assert_eq!(rows.len(), cfg.models.len() * cfg.metrics.len() * cfg.tau_grid.len() * cfg.trials);
    let summary = data_rows(&dir.path().join(SWEEP_SUMMARY_FILE));
    assert_eq!(summary.len(), cfg.models.len() * cfg.metrics.len() * cfg.tau_grid.len());
}

#[test]
fn emitted_files_are_byte_identical_across_runs_and_thread_counts() {
    let g = ba(80, 3);
    let mut outputs = Vec::new();
    for jobs in [1, 4, 1] {
        let cfg = ExperimentConfig {
            include_benchmark: true,
            jobs,
            ..small_config()
        };
        let sweep = run_sweep(&g, &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        // jobs is part of the manifest, so pin it there
        let manifest = RunManifest::new("sweep", ExperimentConfig { jobs: 1, ..cfg });
        let files = emit_results(Results::Sweep(&sweep), &manifest, dir.path()).unwrap();
        let bytes: Vec<Vec<u8>> = files.iter().map(|f| fs::read(f).unwrap()).collect();
        outputs.push(bytes);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn manifest_round_trips_configuration() {
    let cfg = ExperimentConfig {
        include_benchmark: true,
        seed: 12345,
        katz_alpha: 0.07,
        mode: SelectionMode::DeterministicScore,
        ..small_config()
    };
    let g = ba(40, 1);
    let sweep = run_sweep(&g, &cfg).unwrap();
    let mut manifest = RunManifest::new("sweep", cfg.clone());
    manifest.warnings.push("something odd".into());
    manifest.facts.push(("katz_alpha_used".into(), "0.07".into()));
    let dir = tempfile::tempdir().unwrap();
    emit_results(Results::Sweep(&sweep), &manifest, dir.path()).unwrap();
    let text = fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap();
    assert!(text.contains("warning=something odd\n"));
    assert!(text.contains("file=sweep_trials.csv\n"));
    assert_eq!(config_from_manifest(&text).unwrap(), cfg);
}

#[test]
fn failed_metric_cell_is_reported_not_fatal() {
    // K4 + K3: the uniform start is exact inside each clique, so radii
    // converge at once, but the whole-graph eigenvector needs many steps.
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    edges.extend([(4, 5), (4, 6), (5, 6)]);
    let g = Graph::from_edges(7, edges).unwrap();
    let cfg = ExperimentConfig {
        metrics: vec![Metric::Degree, Metric::Eigenvector],
        convergence: Convergence::new(1e-12, 3).unwrap(),
        ..small_config()
    };
    let sweep = run_sweep(&g, &cfg).unwrap();
    for cell in &sweep.cells {
        assert_eq!(cell.failure.is_some(), cell.key.metric == Metric::Eigenvector);
    }
    assert!(sweep.warnings.iter().any(|w| w.contains("eigenvector")));
    let dir = tempfile::tempdir().unwrap();
    emit_results(Results::Sweep(&sweep), &RunManifest::new("sweep", cfg.clone()), dir.path()).unwrap();
    let summary = data_rows(&dir.path().join(SWEEP_SUMMARY_FILE));
    let failed = summary.iter().filter(|r| r.contains("failed: ")).count();
    assert_eq!(failed, cfg.models.len() * cfg.tau_grid.len());
}

#[test]
fn benchmark_cell_and_deviation_file() {
    let cfg = ExperimentConfig {
        include_benchmark: true,
        ..small_config()
    };
    let g = ba(60, 5);
    let sweep = run_sweep(&g, &cfg).unwrap();
    let bench = sweep.cell("benchmark", Some(0.0), Metric::Degree).expect("benchmark cell");
    // the benchmark needs no seed, so all trials coincide
    let first = &bench.trials[0].curve.points;
    assert!(bench.trials.iter().all(|t| &t.curve.points == first));
    let devs = benchmark_deviation(&sweep, Observable::Rho).unwrap();
    assert_eq!(devs.len(), cfg.models.len());
    assert!(devs.iter().all(|d| d.percent >= 0.0));
    let dir = tempfile::tempdir().unwrap();
    emit_results(Results::Sweep(&sweep), &RunManifest::new("sweep", cfg.clone()), dir.path()).unwrap();
    let rows = data_rows(&dir.path().join(DEVIATION_FILE));
    assert_eq!(rows.len(), 2 * cfg.models.len());
}

#[test]
fn trial_seeds_are_shared_between_cells() {
    let cfg = small_config();
    let sweep = run_sweep(&ba(50, 8), &cfg).unwrap();
    for cell in &sweep.cells {
        for rec in &cell.trials {
            assert_eq!(rec.seed, trial_seed(cfg.seed, rec.trial));
        }
    }
}

#[test]
fn netshield_comparison_outputs() {
    let cfg = small_config();
    let g = ba(70, 4);
    let cmp = run_netshield_comparison(&g, &cfg).unwrap();
    assert_eq!(cmp.cells.len(), cfg.models.len() * cfg.netshield_k.len());
    for cell in &cmp.cells {
        assert_eq!(cell.trials.len(), cfg.trials);
        for t in cell.used() {
            assert!(t.beta.is_finite() && t.beta > 0.0);
            // identical picks give identical damage
            if t.same_selection {
                assert_eq!(t.beta, 1.0);
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let mut manifest = RunManifest::new("netshield", cfg.clone());
    manifest.facts.push(("netshield_coupling".into(), cmp.coupling.into()));
    emit_results(Results::NetShield(&cmp), &manifest, dir.path()).unwrap();
    assert_eq!(
        data_rows(&dir.path().join(NETSHIELD_TRIALS_FILE)).len(),
        cfg.models.len() * cfg.netshield_k.len() * cfg.trials
    );
    assert_eq!(
        data_rows(&dir.path().join(NETSHIELD_SUMMARY_FILE)).len(),
        cfg.models.len() * cfg.netshield_k.len()
    );
    let text = fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(config_from_manifest(&text).unwrap(), cfg);
}

#[test]
fn centrality_file_uses_original_labels() {
    let text = "10 20\n20 30\n";
    let g = netrobust::graph::load_edge_list(std::io::Cursor::new(text), netrobust::graph::EdgeListFormat::Plain)
        .unwrap()
        .graph;
    let v = compute(&g, Metric::Degree, 0.1, Convergence::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::default();
    emit_results(Results::Centrality(&g, &[v]), &RunManifest::new("centrality", cfg), dir.path()).unwrap();
    let rows = data_rows(&dir.path().join(CENTRALITY_FILE));
    assert_eq!(rows, ["10,degree,1", "20,degree,2", "30,degree,1"]);
}

#[test]
fn io_errors_carry_the_path() {
    let cfg = small_config();
    let sweep = run_sweep(&triangle(), &cfg).unwrap();
    let file = tempfile::NamedTempFile::new().unwrap();
    let err = emit_results(Results::Sweep(&sweep), &RunManifest::new("sweep", cfg), file.path()).unwrap_err();
    assert!(err.to_string().contains(file.path().to_str().unwrap()), "{err}");
    assert_eq!(err.exit_code(), 2);
}
