// SPDX-License-Identifier: Apache-2.0

//! Greedy eigen-drop node selection (NetShield) and an exhaustive oracle.
//!
//! With `(lambda, u)` the dominant eigenpair of `A`, the shield value of a
//! set `S` is
//!
//! ```text
//! Sv(S) = sum_{i in S} 2 lambda u_i^2 - sum_{i, j in S} A_ij u_i u_j
//! ```
//!
//! Adding node `j` to `S` changes it by
//! `(2 lambda - A_jj) u_j^2 - 2 u_j sum_{s in S} A_js u_s`; `A_jj = 0` on
//! simple graphs. The eigenpair is computed once and the greedy keeps the
//! neighbor sums `b_j = sum_{s in S} A_js u_s` up to date, so `k` steps cost
//! `O(nk + m)` after the eigensolve, inside the `O(nk^2 + m)` envelope.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::spectral::{dominant_eigenpair, spectral_radius, Convergence};

/// Largest graph [`brute_force_best_deletion`] accepts.
pub const BRUTE_FORCE_MAX_NODES: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ShieldSelection {
    pub k: usize,
    /// In selection order.
    pub selected: NodeSet,
    pub shield_value: f64,
    /// `lambda1(G) - lambda1(G \ selected)`.
    pub eigen_drop: f64,
}

/// Dominant eigenvalue and unit Perron vector used to score sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ShieldBasis {
    pub lambda: f64,
    pub u: Vec<f64>,
}

impl ShieldBasis {
    pub fn compute(g: &Graph, conv: Convergence) -> Result<Self> {
        let pair = dominant_eigenpair(g, conv)?;
        Ok(ShieldBasis {
            lambda: pair.value,
            u: pair.vector,
        })
    }

    /// `Sv(S)` for an arbitrary set; duplicate-free by construction of `NodeSet`.
    pub fn shield_value(&self, g: &Graph, set: &NodeSet) -> Result<f64> {
        let mask = set.mask(g.node_count())?;
        let mut value = 0.0;
        for i in set.iter() {
            value += 2.0 * self.lambda * self.u[i] * self.u[i];
            for &j in g.neighbors(i) {
                if mask[j as usize] {
                    value -= self.u[i] * self.u[j as usize];
                }
            }
        }
        Ok(value)
    }

    /// Greedy selection of up to `k` nodes among `allowed` (all nodes when
    /// `None`). Ties go to the smallest index.
    pub fn greedy(&self, g: &Graph, k: usize, allowed: Option<&[bool]>) -> Vec<u32> {
        let n = g.node_count();
        let u = &self.u;
        let base: Vec<f64> = u.iter().map(|x| 2.0 * self.lambda * x * x).collect();
        let mut neighbor_mass = vec![0.0; n];
        let mut taken = vec![false; n];
        let mut selected = Vec::with_capacity(k.min(n));
        for _ in 0..k {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..n {
                if taken[j] || allowed.is_some_and(|a| !a[j]) {
                    continue;
                }
                let score = base[j] - 2.0 * u[j] * neighbor_mass[j];
                if best.is_none_or(|(_, s)| score > s) {
                    best = Some((j, score));
                }
            }
            let Some((pick, _)) = best else { break };
            taken[pick] = true;
            selected.push(pick as u32);
            for &j in g.neighbors(pick) {
                neighbor_mass[j as usize] += u[pick];
            }
        }
        selected
    }
}

fn eigen_drop(g: &Graph, lambda: f64, set: &NodeSet, conv: Convergence) -> Result<f64> {
    let sub = g.delete_nodes(set)?;
    Ok(lambda - spectral_radius(&sub.graph, conv)?.value)
}

pub fn netshield_select(g: &Graph, k: usize, conv: Convergence) -> Result<ShieldSelection> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet("NetShield"));
    }
    if k == 0 || k > g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "NetShield needs 1 <= k <= n (k = {k}, n = {})",
            g.node_count()
        )));
    }
    let basis = ShieldBasis::compute(g, conv)?;
    let selected = NodeSet::from_unique(basis.greedy(g, k, None));
    let shield_value = basis.shield_value(g, &selected)?;
    let eigen_drop = eigen_drop(g, basis.lambda, &selected, conv)?;
    Ok(ShieldSelection {
        k,
        selected,
        shield_value,
        eigen_drop,
    })
}

/// Exact minimizer of the post-deletion spectral radius over all `k`-sets.
/// Ties keep the lexicographically first subset.
pub fn brute_force_best_deletion(g: &Graph, k: usize, conv: Convergence) -> Result<ShieldSelection> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::TooLarge {
            node_count: n,
            limit: BRUTE_FORCE_MAX_NODES,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n (k = {k}, n = {n})")));
    }
    let lambda = spectral_radius(g, conv)?.value;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let set: NodeSet = combo.iter().copied().collect();
        let remaining = spectral_radius(&g.delete_nodes(&set)?.graph, conv)?.value;
        if best.as_ref().is_none_or(|(b, _)| remaining < b - 1e-12) {
            best = Some((remaining, combo.clone()));
        }
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    let (remaining, members) = best.expect("at least one subset");
    let selected: NodeSet = members.into_iter().collect();
    let shield_value = if g.edge_count() == 0 {
        0.0
    } else {
        ShieldBasis::compute(g, conv)?.shield_value(g, &selected)?
    };
    Ok(ShieldSelection {
        k,
        selected,
        shield_value,
        eigen_drop: lambda - remaining,
    })
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}
