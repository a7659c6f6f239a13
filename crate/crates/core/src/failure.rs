// SPDX-License-Identifier: Apache-2.0

//! Survival models, failure sampling and the targeted removal protocol.
//!
//! Two selection modes are provided. In stochastic mode every node fails
//! independently with probability `1 - psi(i)` and the failed nodes with
//! the highest centrality are removed. In deterministic-score mode nodes are
//! ranked by `sigma_i = (1 - psi(i)) * phi(i)` and the top ones are removed.
//! Either way `ceil(tau * n)` removals are requested, where `n` is the node
//! count of the intact graph.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centrality::{CentralityVector, Metric};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::spectral::{connected_components, spectral_radius, Convergence};

/// Probability `psi(i)` that a targeted node survives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurvivalModel {
    Uniform { p: f64 },
    /// `psi(i) = d_i / 2m`: better connected nodes resist more.
    BestConnected,
}

impl SurvivalModel {
    pub fn uniform(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("survival probability {p} outside [0, 1]")));
        }
        Ok(SurvivalModel::Uniform { p })
    }

    /// The always-successful removal process.
    pub fn benchmark() -> Self {
        SurvivalModel::Uniform { p: 0.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SurvivalModel::Uniform { .. } => "uniform",
            SurvivalModel::BestConnected => "best_connected",
        }
    }

    pub fn p(&self) -> Option<f64> {
        match self {
            SurvivalModel::Uniform { p } => Some(*p),
            SurvivalModel::BestConnected => None,
        }
    }
}

impl fmt::Display for SurvivalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurvivalModel::Uniform { p } => write!(f, "uniform(p={p})"),
            SurvivalModel::BestConnected => f.write_str("best_connected"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionMode {
    Stochastic,
    DeterministicScore,
}

impl SelectionMode {
    pub fn name(self) -> &'static str {
        match self {
            SelectionMode::Stochastic => "stochastic",
            SelectionMode::DeterministicScore => "deterministic_score",
        }
    }
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "stochastic" => Ok(SelectionMode::Stochastic),
            "deterministic_score" | "deterministic" => Ok(SelectionMode::DeterministicScore),
            other => Err(Error::InvalidParameter(format!("unknown mode '{other}'"))),
        }
    }
}

pub fn survival_probability(model: SurvivalModel, g: &Graph, i: usize) -> Result<f64> {
    g.check_node(i)?;
    match model {
        SurvivalModel::Uniform { p } => Ok(p),
        SurvivalModel::BestConnected => {
            if g.edge_count() == 0 {
                return Err(Error::EmptyEdgeSet("best-connected survival probability"));
            }
            Ok(g.degree(i) as f64 / (2 * g.edge_count()) as f64)
        }
    }
}

fn survival_vector(model: SurvivalModel, g: &Graph) -> Result<Vec<f64>> {
    if g.node_count() == 0 {
        return Ok(Vec::new());
    }
    (0..g.node_count()).map(|i| survival_probability(model, g, i)).collect()
}

/// Independent Bernoulli failures: node `i` fails with probability
/// `1 - psi(i)`. One uniform draw per node, in index order.
pub fn sample_failures(model: SurvivalModel, g: &Graph, seed: u64) -> Result<NodeSet> {
    let psi = survival_vector(model, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failed = psi
        .iter()
        .enumerate()
        .filter_map(|(i, &s)| {
            let u: f64 = rng.random();
            (u < 1.0 - s).then_some(i as u32)
        })
        .collect();
    Ok(NodeSet::from_unique(failed))
}

/// `ceil(tau * n)`, ignoring floating error below 1e-9 so that grid values
/// such as `3 * 0.02` do not round up an exact product.
pub fn requested_count(tau: f64, n: usize) -> usize {
    let x = tau * n as f64;
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest as usize
    } else {
        x.ceil() as usize
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidParameter(format!("tau {tau} outside [0, 1]")));
    }
    Ok(())
}

fn check_scores(g: &Graph, phi: &CentralityVector) -> Result<()> {
    if phi.len() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "{} centrality scores for {} nodes",
            phi.len(),
            g.node_count()
        )));
    }
    Ok(())
}

/// Descending by key, then by `secondary`, then ascending node index.
fn rank(candidates: Vec<u32>, key: &[f64], secondary: &[f64]) -> Vec<u32> {
    let mut c = candidates;
    c.sort_by(|&a, &b| {
        let (a, b) = (a as usize, b as usize);
        key[b]
            .total_cmp(&key[a])
            .then_with(|| secondary[b].total_cmp(&secondary[a]))
            .then(a.cmp(&b))
    });
    c
}

/// Ranks the failed nodes by descending centrality (ties by index).
pub fn rank_failed(phi: &CentralityVector, failed: &NodeSet) -> Vec<u32> {
    rank(failed.as_slice().to_vec(), &phi.scores, &phi.scores)
}

/// Ranks all nodes by descending `sigma_i = (1 - psi(i)) phi(i)`. Ties in
/// sigma fall back to phi, so positive rescaling never reorders nodes.
pub fn rank_by_score(g: &Graph, phi: &CentralityVector, model: SurvivalModel) -> Result<(Vec<u32>, bool)> {
    check_scores(g, phi)?;
    let psi = survival_vector(model, g)?;
    let sigma: Vec<f64> = psi.iter().zip(&phi.scores).map(|(s, f)| (1.0 - s) * f).collect();
    let degenerate = sigma.iter().all(|&s| s == 0.0);
    Ok((rank((0..g.node_count() as u32).collect(), &sigma, &phi.scores), degenerate))
}

/// Outcome of a target selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub removed: NodeSet,
    pub requested: usize,
    /// Requested removals that could not be made because too few nodes failed.
    pub shortfall: usize,
    /// Every score was zero, so the tie-break alone decided.
    pub degenerate: bool,
}

impl Selection {
    fn from_ranking(ranking: &[u32], requested: usize, degenerate: bool) -> Self {
        let take = requested.min(ranking.len());
        Selection {
            removed: NodeSet::from_unique(ranking[..take].to_vec()),
            requested,
            shortfall: requested - take,
            degenerate,
        }
    }
}

pub fn select_targets(g: &Graph, phi: &CentralityVector, failed: &NodeSet, tau: f64) -> Result<Selection> {
    check_tau(tau)?;
    check_scores(g, phi)?;
    failed.mask(g.node_count())?;
    let requested = requested_count(tau, g.node_count());
    Ok(Selection::from_ranking(&rank_failed(phi, failed), requested, false))
}

pub fn select_targets_deterministic(
    g: &Graph,
    phi: &CentralityVector,
    model: SurvivalModel,
    tau: f64,
) -> Result<Selection> {
    check_tau(tau)?;
    let (ranking, degenerate) = rank_by_score(g, phi, model)?;
    let requested = requested_count(tau, g.node_count());
    Ok(Selection::from_ranking(&ranking, requested, degenerate))
}

/// Spectral radius and LCC size of the intact graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baseline {
    pub lambda1: f64,
    pub lcc: usize,
}

impl Baseline {
    pub fn measure(g: &Graph, conv: Convergence) -> Result<Self> {
        Ok(Baseline {
            lambda1: spectral_radius(g, conv)?.value,
            lcc: connected_components(g).lcc_size,
        })
    }

    fn check(&self) -> Result<()> {
        if !(self.lambda1 > 0.0) || self.lcc == 0 {
            return Err(Error::InvalidParameter(format!(
                "baseline needs lambda1 > 0 and lcc > 0 (got {}, {})",
                self.lambda1, self.lcc
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovalPlan {
    pub tau: f64,
    pub metric: Metric,
    pub model: SurvivalModel,
    pub mode: SelectionMode,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub tau: f64,
    pub removed: NodeSet,
    pub requested_count: usize,
    pub actually_removed: usize,
    pub lambda_tilde: f64,
    pub lcc_tilde: usize,
    /// Effectiveness: `lambda_tilde / lambda1`.
    pub rho: f64,
    /// Coverage: `lcc_tilde / lcc`.
    pub gamma: f64,
}

/// One grid point of a trial; the removed set is a prefix of
/// [`TrialCurve::order`] of length `actually_removed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialPoint {
    pub tau: f64,
    pub requested_count: usize,
    pub actually_removed: usize,
    pub lambda_tilde: f64,
    pub lcc_tilde: usize,
    pub rho: f64,
    pub gamma: f64,
}

/// A trial evaluated over a whole tau grid with a single failure sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialCurve {
    /// Removal order, long enough for the largest tau.
    pub order: Vec<u32>,
    pub points: Vec<TrialPoint>,
    pub degenerate: bool,
}

impl TrialCurve {
    pub fn outcome(&self, idx: usize) -> TrialOutcome {
        let p = self.points[idx];
        TrialOutcome {
            tau: p.tau,
            removed: NodeSet::from_unique(self.order[..p.actually_removed].to_vec()),
            requested_count: p.requested_count,
            actually_removed: p.actually_removed,
            lambda_tilde: p.lambda_tilde,
            lcc_tilde: p.lcc_tilde,
            rho: p.rho,
            gamma: p.gamma,
        }
    }
}

/// Runs one trial across `taus`. The failure sample (stochastic mode) or
/// the score ranking (deterministic mode) is computed once, so removed
/// sets are nested along the grid. `phi` must come from the intact graph.
#[allow(clippy::too_many_arguments)]
pub fn run_trial_curve(
    g: &Graph,
    phi: &CentralityVector,
    model: SurvivalModel,
    mode: SelectionMode,
    seed: u64,
    taus: &[f64],
    base: Baseline,
    conv: Convergence,
) -> Result<TrialCurve> {
    base.check()?;
    check_scores(g, phi)?;
    for &t in taus {
        check_tau(t)?;
    }
    let n = g.node_count();
    let (ranking, degenerate) = match mode {
        SelectionMode::Stochastic => {
            let failed = sample_failures(model, g, seed)?;
            (rank_failed(phi, &failed), false)
        }
        SelectionMode::DeterministicScore => rank_by_score(g, phi, model)?,
    };
    let max_take = taus
        .iter()
        .map(|&t| requested_count(t, n).min(ranking.len()))
        .max()
        .unwrap_or(0);
    let order = ranking[..max_take].to_vec();

    let mut removed = vec![false; n];
    let mut marked = 0;
    let mut last: Option<(usize, f64, usize)> = None;
    let mut points = Vec::with_capacity(taus.len());
    for &tau in taus {
        let requested = requested_count(tau, n);
        let take = requested.min(ranking.len());
        let (lambda_tilde, lcc_tilde) = match last {
            Some((count, l, c)) if count == take => (l, c),
            _ if take == 0 => (base.lambda1, base.lcc),
            _ => {
                // Grids are usually increasing; rebuild the mask otherwise.
                if take < marked {
                    removed.iter_mut().for_each(|r| *r = false);
                    marked = 0;
                }
                for &v in &order[marked..take] {
                    removed[v as usize] = true;
                }
                marked = take;
                let sub = g.delete_masked(&removed);
                (
                    spectral_radius(&sub.graph, conv)?.value,
                    connected_components(&sub.graph).lcc_size,
                )
            }
        };
        last = Some((take, lambda_tilde, lcc_tilde));
        points.push(TrialPoint {
            tau,
            requested_count: requested,
            actually_removed: take,
            lambda_tilde,
            lcc_tilde,
            rho: lambda_tilde / base.lambda1,
            gamma: lcc_tilde as f64 / base.lcc as f64,
        });
    }
    Ok(TrialCurve {
        order,
        points,
        degenerate,
    })
}

/// A single removal trial at `plan.tau`.
pub fn run_trial(
    g: &Graph,
    plan: &RemovalPlan,
    phi: &CentralityVector,
    base: Baseline,
    conv: Convergence,
) -> Result<TrialOutcome> {
    if phi.metric != plan.metric {
        return Err(Error::InvalidParameter(format!(
            "plan targets {} but scores are {}",
            plan.metric, phi.metric
        )));
    }
    let curve = run_trial_curve(g, phi, plan.model, plan.mode, plan.seed, &[plan.tau], base, conv)?;
    Ok(curve.outcome(0))
}
