mod common;

use common::*;
use netrobust::centrality::{compute, degree_centrality, Metric};
use netrobust::failure::{
    rank_by_score, requested_count, run_trial, run_trial_curve, sample_failures, Baseline, RemovalPlan,
    SelectionMode, SurvivalModel,
};
use netrobust::generators::{generate_synthetic, SyntheticKind};
use netrobust::graph::{Graph, NodeSet};
use netrobust::harness::tau_grid;
use netrobust::spectral::{lcc_size, spectral_radius, Convergence};
use proptest::prelude::*;

fn conv() -> Convergence {
    Convergence::default()
}

fn arb_model() -> impl Strategy<Value = SurvivalModel> {
    prop_oneof![
        (0.0f64..1.0).prop_map(|p| SurvivalModel::uniform(p).unwrap()),
        Just(SurvivalModel::BestConnected),
    ]
}

fn arb_mode() -> impl Strategy<Value = SelectionMode> {
    prop_oneof![Just(SelectionMode::Stochastic), Just(SelectionMode::DeterministicScore)]
}

fn connected_fixture(seed: u64) -> Graph {
    generate_synthetic(SyntheticKind::BarabasiAlbert { n: 60, m_attach: 2 }, seed).unwrap()
}

/// Benchmark order by hand: all nodes by score descending, index ascending.
fn benchmark_order(scores: &[f64]) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..scores.len() as u32).collect();
    idx.sort_by(|&a, &b| scores[b as usize].total_cmp(&scores[a as usize]).then(a.cmp(&b)));
    idx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn curves_are_monotone_and_bounded(
        g in arb_model_graph(50),
        model in arb_model(),
        mode in arb_mode(),
        metric in prop::sample::select(vec![Metric::Degree, Metric::HIndex, Metric::Coreness, Metric::Eigenvector]),
        seed in any::<u64>(),
    ) {
        prop_assume!(g.edge_count() > 0);
        let phi = compute(&g, metric, 0.1, conv()).unwrap();
        let base = Baseline::measure(&g, conv()).unwrap();
        let taus = tau_grid(0.5, 0.05).unwrap();
        let curve = run_trial_curve(&g, &phi, model, mode, seed, &taus, base, conv()).unwrap();
        prop_assert_eq!(curve.points[0].rho, 1.0);
        prop_assert_eq!(curve.points[0].gamma, 1.0);
        for w in curve.points.windows(2) {
            prop_assert!(w[1].rho <= w[0].rho + 1e-9, "rho rose: {} -> {}", w[0].rho, w[1].rho);
            prop_assert!(w[1].gamma <= w[0].gamma);
            prop_assert!(w[1].actually_removed >= w[0].actually_removed);
        }
        for p in &curve.points {
            prop_assert!((0.0..=1.0 + 1e-9).contains(&p.rho));
            prop_assert!((0.0..=1.0 + 1e-9).contains(&p.gamma));
            prop_assert!(p.actually_removed <= p.requested_count);
            prop_assert_eq!(p.requested_count, requested_count(p.tau, g.node_count()));
        }
    }

    #[test]
    fn curve_points_match_independent_recomputation(g in arb_model_graph(40), seed in any::<u64>(), p in 0.0f64..0.9) {
        prop_assume!(g.edge_count() > 0);
        let phi = degree_centrality(&g);
        let base = Baseline::measure(&g, conv()).unwrap();
        let taus = [0.0, 0.1, 0.3];
        let model = SurvivalModel::uniform(p).unwrap();
        let curve = run_trial_curve(&g, &phi, model, SelectionMode::Stochastic, seed, &taus, base, conv()).unwrap();
        for (idx, &tau) in taus.iter().enumerate() {
            let out = curve.outcome(idx);
            let sub = g.delete_nodes(&out.removed).unwrap().graph;
            prop_assert!((spectral_radius(&sub, conv()).unwrap().value - out.lambda_tilde).abs() < 1e-9);
            prop_assert_eq!(lcc_size(&sub), out.lcc_tilde);
            let plan = RemovalPlan { tau, metric: Metric::Degree, model, mode: SelectionMode::Stochastic, seed };
            let single = run_trial(&g, &plan, &phi, base, conv()).unwrap();
            prop_assert_eq!(single, out);
        }
    }

    #[test]
    fn zero_survival_stochastic_equals_deterministic_benchmark(g in arb_model_graph(60), seed in any::<u64>()) {
        prop_assume!(g.edge_count() > 0);
        let phi = degree_centrality(&g);
        let base = Baseline::measure(&g, conv()).unwrap();
        let taus = tau_grid(0.3, 0.02).unwrap();
        let bench = SurvivalModel::benchmark();
        let a = run_trial_curve(&g, &phi, bench, SelectionMode::Stochastic, seed, &taus, base, conv()).unwrap();
        let b = run_trial_curve(&g, &phi, bench, SelectionMode::DeterministicScore, 0, &taus, base, conv()).unwrap();
        prop_assert_eq!(&a.order, &b.order);
        for (x, y) in a.points.iter().zip(&b.points) {
            prop_assert_eq!(x.lambda_tilde.to_bits(), y.lambda_tilde.to_bits());
            prop_assert_eq!(x.lcc_tilde, y.lcc_tilde);
        }
        let want = benchmark_order(&phi.scores);
        prop_assert_eq!(&a.order[..], &want[..a.order.len()]);
    }

    #[test]
    fn deterministic_ranking_ignores_uniform_p(g in arb_model_graph(40), p in 0.0f64..0.99, q in 0.0f64..0.99) {
        let phi = degree_centrality(&g);
        let (a, _) = rank_by_score(&g, &phi, SurvivalModel::uniform(p).unwrap()).unwrap();
        let (b, _) = rank_by_score(&g, &phi, SurvivalModel::uniform(q).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn failure_frequencies_follow_survival_probability() {
    let g = connected_fixture(1);
    let n = g.node_count();
    let seeds = 2000u64;
    for p in [0.1, 0.5, 0.9] {
        let model = SurvivalModel::uniform(p).unwrap();
        let failed: usize = (0..seeds).map(|s| sample_failures(model, &g, s).unwrap().len()).sum();
        let rate = failed as f64 / (seeds as usize * n) as f64;
        // 2000 * 60 draws: standard error below 0.0015
        assert!((rate - (1.0 - p)).abs() < 0.01, "p = {p}: rate {rate}");
    }
    let two_m = 2.0 * g.edge_count() as f64;
    let mut counts = vec![0usize; n];
    for s in 0..seeds {
        for v in sample_failures(SurvivalModel::BestConnected, &g, s).unwrap().iter() {
            counts[v] += 1;
        }
    }
    for (i, &c) in counts.iter().enumerate() {
        let want = 1.0 - g.degree(i) as f64 / two_m;
        let got = c as f64 / seeds as f64;
        assert!((got - want).abs() < 0.05, "node {i}: {got} vs {want}");
    }
}

#[test]
fn removal_uses_only_failed_nodes_in_score_order() {
    let g = connected_fixture(2);
    let phi = degree_centrality(&g);
    let base = Baseline::measure(&g, conv()).unwrap();
    let model = SurvivalModel::uniform(0.6).unwrap();
    for seed in 0..20 {
        let failed = sample_failures(model, &g, seed).unwrap();
        let curve = run_trial_curve(&g, &phi, model, SelectionMode::Stochastic, seed, &[0.5], base, conv()).unwrap();
        let mut want: Vec<u32> = failed.sorted();
        want.sort_by(|&a, &b| phi.scores[b as usize].total_cmp(&phi.scores[a as usize]).then(a.cmp(&b)));
        want.truncate(requested_count(0.5, g.node_count()));
        assert_eq!(curve.order, want);
        let set: NodeSet = curve.order.iter().map(|&v| v as usize).collect();
        assert!(set.iter().all(|v| failed.contains(v)));
    }
}

#[test]
fn requested_count_is_exact_ceiling_on_grid() {
    for n in [1usize, 7, 100, 4941, 58228] {
        for k in 0..=50u64 {
            let tau = k as f64 * 0.02;
            // ceil(k * n / 50) in integers
            let want = ((k as usize) * n).div_ceil(50);
            assert_eq!(requested_count(tau, n), want, "tau {tau} n {n}");
        }
    }
}
