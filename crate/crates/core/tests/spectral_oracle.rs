mod common;

use common::*;
use netrobust::centrality::{eigenvector_centrality, katz_centrality};
use netrobust::generators::{generate_synthetic, SyntheticKind};
use netrobust::graph::{Graph, NodeSet};
use netrobust::spectral::{connected_components, spectral_radius, Convergence};
use proptest::prelude::*;

fn conv() -> Convergence {
    Convergence::default()
}

#[test]
fn radius_matches_dense_solver_on_model_graphs() {
    for (idx, g) in model_graph_fixtures(60).iter().enumerate() {
        let got = spectral_radius(g, conv()).unwrap().value;
        let want = dense_lambda1(g);
        assert!((got - want).abs() < 1e-6, "graph {idx}: {got} vs {want}");
    }
}

#[test]
fn eigenvector_matches_dense_solver_when_top_eigenvalue_is_simple() {
    let mut checked = 0;
    for g in model_graph_fixtures(80) {
        if g.edge_count() == 0 || dense_spectral_gap(&g) < 1e-2 {
            continue;
        }
        let (_, v) = dense_top_eigenpair(&g);
        let got = eigenvector_centrality(&g, conv()).unwrap();
        let err = got
            .scores
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "max error {err}");
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} graphs had a simple top eigenvalue");
}

#[test]
fn katz_matches_dense_linear_solve() {
    for g in model_graph_fixtures(30) {
        let lambda = dense_lambda1(&g);
        if lambda == 0.0 {
            continue;
        }
        for frac in [0.1, 0.5, 0.9] {
            let alpha = frac / lambda;
            let got = katz_centrality(&g, alpha, conv()).unwrap();
            let want = dense_katz(&g, alpha);
            for (a, b) in got.scores.iter().zip(&want) {
                assert!((a - b).abs() <= 1e-6 * b.max(1.0), "alpha {alpha}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn analytic_families() {
    let cases = [
        (SyntheticKind::Complete { n: 50 }, 49.0),
        (SyntheticKind::Cycle { n: 51 }, 2.0),
        (SyntheticKind::Star { leaves: 64 }, 8.0),
        (SyntheticKind::Petersen, 3.0),
        // 2 cos(pi / (n + 1))
        (SyntheticKind::Path { n: 5 }, 3f64.sqrt()),
    ];
    for (kind, want) in cases {
        let g = generate_synthetic(kind, 0).unwrap();
        let got = spectral_radius(&g, conv()).unwrap().value;
        assert!((got - want).abs() < 1e-6, "{kind:?}: {got}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn radius_between_mean_degree_and_max_degree(g in arb_graph(30)) {
        let r = spectral_radius(&g, conv()).unwrap().value;
        let n = g.node_count() as f64;
        let mean = 2.0 * g.edge_count() as f64 / n;
        let max = g.max_degree() as f64;
        prop_assert!(r >= mean - 1e-6);
        prop_assert!(r >= max.sqrt() - 1e-6);
        prop_assert!(r <= max + 1e-6);
    }

    #[test]
    fn radius_is_invariant_under_relabeling(g in arb_graph(25), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = Graph::from_edges(n, g.edges().map(|(i, j)| (perm[i], perm[j]))).unwrap();
        let a = spectral_radius(&g, conv()).unwrap().value;
        let b = spectral_radius(&h, conv()).unwrap().value;
        prop_assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn deleting_a_node_never_raises_radius(g in arb_graph(25), v in any::<prop::sample::Index>()) {
        let node = v.index(g.node_count());
        let sub = g.delete_nodes(&NodeSet::from_iter([node])).unwrap().graph;
        let before = spectral_radius(&g, conv()).unwrap().value;
        let after = spectral_radius(&sub, conv()).unwrap().value;
        prop_assert!(after <= before + 1e-6);
    }

    #[test]
    fn components_match_disjoint_sets(g in arb_graph(40)) {
        let summary = connected_components(&g);
        let want = union_find_sizes(&g);
        let mut got = summary.sizes.clone();
        got.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(summary.lcc_size, want[0]);
        prop_assert_eq!(summary.component_count, want.len());
        for (i, j) in g.edges() {
            prop_assert_eq!(summary.component_of[i], summary.component_of[j]);
        }
    }
}
