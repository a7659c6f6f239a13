// SPDX-License-Identifier: Apache-2.0

//! Seeded synthetic graphs used as fixtures and scale proxies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticKind {
    /// G(n, p): every pair is an edge independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// Preferential attachment: each new node links to `m_attach` distinct
    /// existing nodes chosen proportionally to degree.
    BarabasiAlbert { n: usize, m_attach: usize },
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// K(1, leaves) with the center at index 0.
    Star { leaves: usize },
    Petersen,
}

pub fn generate_synthetic(kind: SyntheticKind, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        SyntheticKind::ErdosRenyi { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
            }
            require_nodes(n, 1)?;
            Graph::from_edges(n, erdos_renyi_edges(n, p, &mut rng))
        }
        SyntheticKind::BarabasiAlbert { n, m_attach } => {
            if m_attach == 0 || m_attach >= n {
                return Err(Error::InvalidParameter(format!(
                    "preferential attachment needs 1 <= m_attach < n (got m_attach={m_attach}, n={n})"
                )));
            }
            Graph::from_edges(n, barabasi_albert_edges(n, m_attach, &mut rng))
        }
        SyntheticKind::Complete { n } => {
            require_nodes(n, 1)?;
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        SyntheticKind::Cycle { n } => {
            require_nodes(n, 3)?;
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        SyntheticKind::Path { n } => {
            require_nodes(n, 1)?;
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        SyntheticKind::Star { leaves } => {
            require_nodes(leaves, 1)?;
            Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l)))
        }
        SyntheticKind::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::from_edges(10, outer.chain(spokes).chain(inner))
        }
    }
}

fn require_nodes(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!("need at least {min} nodes, got {n}")));
    }
    Ok(())
}

/// Geometric skipping over the lexicographic pair sequence, so sparse
/// graphs cost O(n + m) rather than O(n^2).
fn erdos_renyi_edges(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    edges
}

fn barabasi_albert_edges(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * m);
    // Every edge endpoint appears once here, so uniform draws from it are
    // degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n * m);
    for i in 0..=m {
        for j in i + 1..=m {
            edges.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    for new in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, new));
            endpoints.push(t);
            endpoints.push(new);
        }
    }
    edges
}
