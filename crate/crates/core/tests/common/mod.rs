//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's algorithms, only its graph type.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use netrobust::generators::{generate_synthetic, SyntheticKind};
use netrobust::graph::Graph;
use proptest::prelude::*;

pub fn dense(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut a = DMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        a[(i, j)] = 1.0;
        a[(j, i)] = 1.0;
    }
    a
}

/// Largest eigenvalue and a unit eigenvector with nonnegative sum.
pub fn dense_top_eigenpair(g: &Graph) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(dense(g));
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let mut v = eig.eigenvectors.column(idx).into_owned();
    if v.sum() < 0.0 {
        v = -v;
    }
    (value, v)
}

/// Gap between the two largest eigenvalues.
pub fn dense_spectral_gap(g: &Graph) -> f64 {
    let mut ev: Vec<f64> = SymmetricEigen::new(dense(g)).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    if ev.len() < 2 {
        f64::INFINITY
    } else {
        ev[0] - ev[1]
    }
}

pub fn dense_lambda1(g: &Graph) -> f64 {
    if g.node_count() == 0 {
        return 0.0;
    }
    dense_top_eigenpair(g).0
}

/// Solves `(I - alpha A) x = 1` directly.
pub fn dense_katz(g: &Graph, alpha: f64) -> Vec<f64> {
    let n = g.node_count();
    let m = DMatrix::identity(n, n) - dense(g) * alpha;
    let x = m.lu().solve(&DVector::from_element(n, 1.0)).unwrap();
    x.iter().copied().collect()
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for (i, j) in g.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }
    adj
}

/// Largest h with at least h neighbors of degree >= h, by scanning every h.
pub fn brute_h_index(g: &Graph) -> Vec<usize> {
    let adj = adjacency_lists(g);
    (0..g.node_count())
        .map(|i| {
            (0..=adj[i].len())
                .rev()
                .find(|&h| adj[i].iter().filter(|&&j| adj[j].len() >= h).count() >= h)
                .unwrap()
        })
        .collect()
}

/// For every k, strips nodes of degree < k until none remain; a node's
/// coreness is the largest k at which it survives.
pub fn brute_coreness(g: &Graph) -> Vec<usize> {
    let adj = adjacency_lists(g);
    let n = g.node_count();
    let mut core = vec![0; n];
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let drop: Vec<usize> = (0..n)
                .filter(|&i| alive[i] && adj[i].iter().filter(|&&j| alive[j]).count() < k)
                .collect();
            if drop.is_empty() {
                break;
            }
            for i in drop {
                alive[i] = false;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for i in 0..n {
            if alive[i] {
                core[i] = k;
            }
        }
    }
    core
}

pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Component sizes sorted descending.
pub fn union_find_sizes(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut ds = DisjointSet::new(n);
    for (i, j) in g.edges() {
        ds.union(i, j);
    }
    let mut counts = vec![0; n];
    for i in 0..n {
        let r = ds.find(i);
        counts[r] += 1;
    }
    let mut sizes: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Edges of `g` surviving deletion of `removed`, relabeled by rank among
/// the surviving indices.
pub fn filtered_edges(g: &Graph, removed: &[bool]) -> Vec<(usize, usize)> {
    let mut new_id = vec![usize::MAX; g.node_count()];
    let mut next = 0;
    for i in 0..g.node_count() {
        if !removed[i] {
            new_id[i] = next;
            next += 1;
        }
    }
    let mut e: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(i, j)| !removed[i] && !removed[j])
        .map(|(i, j)| (new_id[i], new_id[j]))
        .collect();
    e.sort_unstable();
    e
}

/// `sum_{i in S} 2 lambda u_i^2 - sum_{i,j in S} A_ij u_i u_j` from the
/// dense matrix and dense eigenpair.
pub fn dense_shield_value(g: &Graph, set: &[usize]) -> f64 {
    let (lambda, u) = dense_top_eigenpair(g);
    let a = dense(g);
    let mut v = 0.0;
    for &i in set {
        v += 2.0 * lambda * u[i] * u[i];
        for &j in set {
            v -= a[(i, j)] * u[i] * u[j];
        }
    }
    v
}

/// All k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Random simple graph from an arbitrary edge list over `n` nodes.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=(3 * n)).prop_map(move |e| Graph::from_edges(n, e).unwrap())
    })
}

/// Erdos-Renyi or Barabasi-Albert graphs with `n <= max_n`.
pub fn arb_model_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    prop_oneof![
        (2..=max_n, 0.05f64..0.5, any::<u64>())
            .prop_map(|(n, p, s)| generate_synthetic(SyntheticKind::ErdosRenyi { n, p }, s).unwrap()),
        (4..=max_n.max(4), 1usize..=3, any::<u64>()).prop_map(|(n, m, s)| generate_synthetic(
            SyntheticKind::BarabasiAlbert { n, m_attach: m },
            s
        )
        .unwrap()),
    ]
}

/// Fixed mix of ER and BA graphs, `count` of them, all with `n <= 100`.
pub fn model_graph_fixtures(count: usize) -> Vec<Graph> {
    (0..count as u64)
        .map(|s| {
            let n = 10 + (s as usize * 37) % 91;
            if s % 2 == 0 {
                let p = 0.03 + 0.2 * ((s % 7) as f64 / 7.0);
                generate_synthetic(SyntheticKind::ErdosRenyi { n, p }, s).unwrap()
            } else {
                let m = 1 + (s as usize % 3);
                generate_synthetic(SyntheticKind::BarabasiAlbert { n, m_attach: m }, s).unwrap()
            }
        })
        .collect()
}
