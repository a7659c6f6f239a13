// SPDX-License-Identifier: Apache-2.0

//! The two damage observables: spectral radius and largest connected component.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Stopping rule for the iterative kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for Convergence {
    fn default() -> Self {
        Convergence {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl Convergence {
    pub fn new(tol: f64, max_iter: usize) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) || max_iter == 0 {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive and max_iter >= 1 (got {tol}, {max_iter})"
            )));
        }
        Ok(Convergence { tol, max_iter })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    pub iterations: usize,
    /// `||A x - value x||` for the final unit iterate.
    pub residual: f64,
}

/// `y = A x`.
pub(crate) fn adjacency_mul(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = g.neighbors(i).iter().map(|&j| x[j as usize]).sum();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StopOn {
    /// Successive unit iterates closer than `tol` in max-norm.
    Vector,
    /// Residual or extrapolated Rayleigh-quotient error below `tol`
    /// (relative once above 1).
    Rayleigh,
}

#[derive(Debug, Clone)]
pub(crate) struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Power iteration on `A + I` from the uniform unit vector.
///
/// The shift keeps `-lambda1` of bipartite graphs from competing with
/// `+lambda1`. Iterates stay nonnegative, so the limit is the Perron vector
/// (or a nonnegative mix of Perron vectors of tied components).
pub(crate) fn power_iteration(g: &Graph, conv: Convergence, stop: StopOn) -> Result<Eigenpair> {
    let n = g.node_count();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut theta_prev = f64::NAN;
    let mut theta = 0.0;
    let mut residual = f64::INFINITY;
    let mut calm_steps = 0;
    let mut step_prev = f64::NAN;

    for iter in 1..=conv.max_iter {
        adjacency_mul(g, &x, &mut y);
        theta = dot(&x, &y);
        residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - theta * xi).powi(2))
            .sum::<f64>()
            .sqrt();

        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += xi;
        }
        let norm = dot(&y, &y).sqrt();
        let mut change: f64 = 0.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            let next = yi / norm;
            change = change.max((next - *xi).abs());
            *xi = next;
        }

        let done = match stop {
            StopOn::Vector => change < conv.tol,
            StopOn::Rayleigh => {
                let scale = theta.abs().max(1.0);
                let step = (theta - theta_prev).abs();
                // Quotients approach lambda1 geometrically; with q the ratio
                // of successive steps the remaining gap is step * q / (1 - q).
                let tail = if step == 0.0 {
                    0.0
                } else if step < step_prev {
                    let q = step / step_prev;
                    step * q / (1.0 - q)
                } else {
                    f64::INFINITY
                };
                step_prev = step;
                if residual <= conv.tol * scale {
                    true
                } else {
                    // Two consecutive quiet steps guard against a single
                    // coincidentally small increment.
                    if tail <= conv.tol * scale {
                        calm_steps += 1;
                    } else {
                        calm_steps = 0;
                    }
                    calm_steps >= 2
                }
            }
        };
        theta_prev = theta;
        if done {
            if stop == StopOn::Vector {
                // Report the quotient of the returned vector.
                adjacency_mul(g, &x, &mut y);
                theta = dot(&x, &y);
            }
            return Ok(Eigenpair {
                value: theta,
                vector: x,
                iterations: iter,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: conv.max_iter,
        estimate: theta,
        residual,
        last_iterate: x,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest adjacency eigenvalue. An edgeless graph (including `n = 0`) has
/// spectral radius 0 and needs no iterations.
///
/// Disconnected graphs are solved component by component: near-equal radii
/// of different components would otherwise stall the iteration. Components
/// whose bound `min(max degree, sqrt(2m - n + 1))` cannot beat the best
/// radius found so far are skipped.
pub fn spectral_radius(g: &Graph, conv: Convergence) -> Result<SpectralRadius> {
    if g.edge_count() == 0 {
        return Ok(SpectralRadius {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let comps = connected_components(g);
    if comps.component_count == 1 {
        return connected_radius(g, conv);
    }

    let k = comps.component_count;
    let mut edges2 = vec![0usize; k];
    let mut max_deg = vec![0usize; k];
    for v in 0..g.node_count() {
        let c = comps.component_of[v] as usize;
        edges2[c] += g.degree(v);
        max_deg[c] = max_deg[c].max(g.degree(v));
    }
    let mut order: Vec<(f64, usize)> = (0..k)
        .filter(|&c| edges2[c] > 0)
        .map(|c| {
            let hong = ((edges2[c] + 1 - comps.sizes[c]) as f64).sqrt();
            (hong.min(max_deg[c] as f64), c)
        })
        .collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    // Members of each component, in index order.
    let mut start = vec![0usize; k + 1];
    for &c in &comps.component_of {
        start[c as usize + 1] += 1;
    }
    for c in 0..k {
        start[c + 1] += start[c];
    }
    let mut fill = start.clone();
    let mut members = vec![0u32; g.node_count()];
    let mut local = vec![0u32; g.node_count()];
    for v in 0..g.node_count() {
        let c = comps.component_of[v] as usize;
        local[v] = (fill[c] - start[c]) as u32;
        members[fill[c]] = v as u32;
        fill[c] += 1;
    }

    let mut best = SpectralRadius {
        value: 0.0,
        iterations: 0,
        residual: 0.0,
    };
    let mut iterations = 0;
    for (bound, c) in order {
        if bound <= best.value {
            break;
        }
        let nodes = &members[start[c]..start[c + 1]];
        let local = &local;
        let edges = nodes.iter().flat_map(|&v| {
            g.neighbors(v as usize)
                .iter()
                .filter(move |&&w| w > v)
                .map(move |&w| (local[v as usize] as usize, local[w as usize] as usize))
        });
        let sub = Graph::from_edges(nodes.len(), edges)?;
        let r = connected_radius(&sub, conv)?;
        iterations += r.iterations;
        if r.value > best.value {
            best = r;
        }
    }
    best.iterations = iterations;
    Ok(best)
}

fn connected_radius(g: &Graph, conv: Convergence) -> Result<SpectralRadius> {
    let pair = power_iteration(g, conv, StopOn::Rayleigh)?;
    Ok(SpectralRadius {
        value: pair.value,
        iterations: pair.iterations,
        residual: pair.residual,
    })
}

/// Dominant eigenpair with a unit, nonnegative eigenvector.
pub(crate) fn dominant_eigenpair(g: &Graph, conv: Convergence) -> Result<Eigenpair> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet("dominant eigenpair"));
    }
    power_iteration(g, conv, StopOn::Vector)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    pub component_count: usize,
    pub lcc_size: usize,
    /// Members of the largest component; ties go to the component holding
    /// the smallest node index.
    pub lcc_members: NodeSet,
    /// Component id per node, ids numbered by smallest member.
    pub component_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

pub fn connected_components(g: &Graph) -> ComponentSummary {
    let n = g.node_count();
    let mut component_of = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if component_of[root] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        component_of[root] = id;
        stack.push(root);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                let w = w as usize;
                if component_of[w] == u32::MAX {
                    component_of[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    let (lcc_id, lcc_size) = sizes
        .iter()
        .enumerate()
        .fold((0, 0), |best, (id, &s)| if s > best.1 { (id, s) } else { best });
    let lcc_members = if n == 0 {
        NodeSet::new()
    } else {
        NodeSet::from_unique(
            (0..n as u32)
                .filter(|&i| component_of[i as usize] == lcc_id as u32)
                .collect(),
        )
    };
    ComponentSummary {
        component_count: sizes.len(),
        lcc_size,
        lcc_members,
        component_of,
        sizes,
    }
}

/// Size of the largest connected component without materializing it.
pub fn lcc_size(g: &Graph) -> usize {
    connected_components(g).lcc_size
}
