// SPDX-License-Identifier: Apache-2.0

//! Node scoring functions: degree, h-index, coreness, eigenvector and Katz.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{adjacency_mul, power_iteration, Convergence, StopOn};

/// Default Katz attenuation factor.
pub const DEFAULT_KATZ_ALPHA: f64 = 0.1;

/// Katz iterates whose max entry exceeds this are treated as divergent.
pub const KATZ_DIVERGENCE_BOUND: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Degree,
    HIndex,
    Coreness,
    Eigenvector,
    Katz,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Degree,
        Metric::HIndex,
        Metric::Coreness,
        Metric::Eigenvector,
        Metric::Katz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::HIndex => "h_index",
            Metric::Coreness => "coreness",
            Metric::Eigenvector => "eigenvector",
            Metric::Katz => "katz",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "degree" => Ok(Metric::Degree),
            "h_index" | "hindex" => Ok(Metric::HIndex),
            "coreness" | "core" => Ok(Metric::Coreness),
            "eigenvector" | "eigen" => Ok(Metric::Eigenvector),
            "katz" => Ok(Metric::Katz),
            other => Err(Error::InvalidParameter(format!("unknown metric '{other}'"))),
        }
    }
}

/// Per-node scores of one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub metric: Metric,
    pub scores: Vec<f64>,
    /// Attenuation factor, for Katz only.
    pub alpha: Option<f64>,
}

impl CentralityVector {
    fn integral(metric: Metric, values: Vec<usize>) -> Self {
        CentralityVector {
            metric,
            scores: values.into_iter().map(|v| v as f64).collect(),
            alpha: None,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// CSV with columns `node_id,metric,score`; node ids are dataset labels
    /// when the graph carries them.
    pub fn write_csv<W: Write>(&self, g: &Graph, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["node_id", "metric", "score"])?;
        for (i, s) in self.scores.iter().enumerate() {
            w.write_record([
                g.label_of(i).to_string(),
                self.metric.name().to_string(),
                crate::format::sig12(*s),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn degree_centrality(g: &Graph) -> CentralityVector {
    CentralityVector::integral(Metric::Degree, (0..g.node_count()).map(|i| g.degree(i)).collect())
}

/// Largest `h` such that at least `h` neighbors have degree `>= h`.
pub fn h_index_centrality(g: &Graph) -> CentralityVector {
    let mut buf = Vec::new();
    let values = (0..g.node_count())
        .map(|i| {
            buf.clear();
            buf.extend(g.neighbors(i).iter().map(|&j| g.degree(j as usize)));
            buf.sort_unstable_by(|a, b| b.cmp(a));
            buf.iter()
                .enumerate()
                .take_while(|&(rank, &d)| d > rank)
                .count()
        })
        .collect();
    CentralityVector::integral(Metric::HIndex, values)
}

/// Core numbers by bucket peeling (Batagelj-Zaversnik), O(n + m).
pub fn coreness_centrality(g: &Graph) -> CentralityVector {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin_start[d + 1] += 1;
    }
    for d in 1..bin_start.len() {
        bin_start[d] += bin_start[d - 1];
    }
    // order: nodes sorted by current degree; pos: where each node sits.
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    let mut fill = bin_start.clone();
    for v in 0..n {
        pos[v] = fill[degree[v]];
        order[pos[v]] = v;
        fill[degree[v]] += 1;
    }

    for idx in 0..n {
        let v = order[idx];
        for &u in g.neighbors(v) {
            let u = u as usize;
            if degree[u] > degree[v] {
                // Swap u with the first node of its bin, then shrink the bin.
                let du = degree[u];
                let first = bin_start[du];
                let w = order[first];
                if u != w {
                    order.swap(pos[u], first);
                    pos[w] = pos[u];
                    pos[u] = first;
                }
                bin_start[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    CentralityVector::integral(Metric::Coreness, degree)
}

/// Dominant adjacency eigenvector, unit Euclidean norm, nonnegative.
pub fn eigenvector_centrality(g: &Graph, conv: Convergence) -> Result<CentralityVector> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet("eigenvector"));
    }
    let pair = power_iteration(g, conv, StopOn::Vector)?;
    Ok(CentralityVector {
        metric: Metric::Eigenvector,
        scores: pair.vector,
        alpha: None,
    })
}

/// Solves `(I - alpha A) k = 1` by the fixed point `k <- 1 + alpha A k`,
/// stopping when the largest change is below `tol` relative to the largest
/// score (scores grow like `1 / (1 - alpha lambda1)`).
/// Converges only for `alpha < 1/lambda1`; larger values are reported as
/// divergence once an entry passes [`KATZ_DIVERGENCE_BOUND`].
pub fn katz_centrality(g: &Graph, alpha: f64, conv: Convergence) -> Result<CentralityVector> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("Katz alpha must be positive, got {alpha}")));
    }
    let n = g.node_count();
    let mut k = vec![1.0; n];
    let mut ak = vec![0.0; n];
    let mut change = f64::INFINITY;
    for _ in 0..conv.max_iter {
        adjacency_mul(g, &k, &mut ak);
        change = 0.0;
        let mut largest: f64 = 0.0;
        for (ki, aki) in k.iter_mut().zip(&ak) {
            let next = 1.0 + alpha * aki;
            change = change.max((next - *ki).abs());
            largest = largest.max(next);
            *ki = next;
        }
        if !largest.is_finite() || largest > KATZ_DIVERGENCE_BOUND {
            return Err(Error::KatzDivergence { alpha });
        }
        if change < conv.tol * largest.max(1.0) {
            return Ok(CentralityVector {
                metric: Metric::Katz,
                scores: k,
                alpha: Some(alpha),
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: conv.max_iter,
        estimate: k.iter().copied().fold(0.0, f64::max),
        residual: change,
        last_iterate: k,
    })
}

/// Dispatches on `metric`. `katz_alpha` is ignored by the other metrics.
pub fn compute(g: &Graph, metric: Metric, katz_alpha: f64, conv: Convergence) -> Result<CentralityVector> {
    match metric {
        Metric::Degree => Ok(degree_centrality(g)),
        Metric::HIndex => Ok(h_index_centrality(g)),
        Metric::Coreness => Ok(coreness_centrality(g)),
        Metric::Eigenvector => eigenvector_centrality(g, conv),
        Metric::Katz => katz_centrality(g, katz_alpha, conv),
    }
}
