// SPDX-License-Identifier: Apache-2.0

//! C interface to `netrobust`.
//!
//! Graphs are opaque `NrGraph` handles created by `nr_graph_*` constructors
//! and released with `nr_graph_free`. Every fallible call returns an
//! `NrStatus`; on failure `nr_last_error` gives a message for the calling
//! thread. Output parameters are only written on `NR_OK`.

#![allow(clippy::missing_safety_doc, non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use netrobust::centrality::{compute, Metric};
use netrobust::error::Error;
use netrobust::failure::{run_trial, Baseline, RemovalPlan, SelectionMode, SurvivalModel};
use netrobust::generators::{generate_synthetic, SyntheticKind};
use netrobust::graph::{load_edge_list, EdgeListFormat, Graph, NodeSet};
use netrobust::netshield::netshield_select;
use netrobust::spectral::{lcc_size, spectral_radius, Convergence};

/// Opaque graph handle.
pub struct NrGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    NR_OK = 0,
    NR_INVALID_ARGUMENT = 1,
    NR_DATA_ERROR = 2,
    NR_NUMERICAL_ERROR = 3,
    NR_NULL_POINTER = 4,
    NR_BUFFER_TOO_SMALL = 5,
    NR_PANIC = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrFormat {
    NR_FORMAT_PLAIN = 0,
    NR_FORMAT_KONECT = 1,
    NR_FORMAT_SNAP = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrMetric {
    NR_METRIC_DEGREE = 0,
    NR_METRIC_H_INDEX = 1,
    NR_METRIC_CORENESS = 2,
    NR_METRIC_EIGENVECTOR = 3,
    NR_METRIC_KATZ = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrModel {
    /// Every node survives with probability `p`.
    NR_MODEL_UNIFORM = 0,
    /// Survival probability is degree over twice the edge count.
    NR_MODEL_BEST_CONNECTED = 1,
}

/// Parameters of a single removal trial.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NrTrialSpec {
    pub tau: f64,
    pub metric: NrMetric,
    pub model: NrModel,
    /// Only read for `NR_MODEL_UNIFORM`.
    pub p: f64,
    /// Rank by expected failure score instead of sampling.
    pub deterministic: bool,
    pub seed: u64,
    /// Only read for `NR_METRIC_KATZ`.
    pub katz_alpha: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct NrTrialResult {
    pub requested_count: usize,
    pub actually_removed: usize,
    pub lambda_tilde: f64,
    pub lcc_tilde: usize,
    pub rho: f64,
    pub gamma: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> NrStatus {
    match err.exit_code() {
        1 => NrStatus::NR_INVALID_ARGUMENT,
        2 => NrStatus::NR_DATA_ERROR,
        _ => NrStatus::NR_NUMERICAL_ERROR,
    }
}

struct Failure(NrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NrStatus::NR_OK,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            NrStatus::NR_PANIC
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(NrStatus::NR_NULL_POINTER, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const NrGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn write_handle(out: *mut *mut NrGraph, g: Graph) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(NrGraph { inner: g }));
    Ok(())
}

unsafe fn slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

fn metric(m: NrMetric) -> Metric {
    match m {
        NrMetric::NR_METRIC_DEGREE => Metric::Degree,
        NrMetric::NR_METRIC_H_INDEX => Metric::HIndex,
        NrMetric::NR_METRIC_CORENESS => Metric::Coreness,
        NrMetric::NR_METRIC_EIGENVECTOR => Metric::Eigenvector,
        NrMetric::NR_METRIC_KATZ => Metric::Katz,
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn nr_graph_load(path: *const c_char, format: NrFormat, out: *mut *mut NrGraph) -> NrStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure(NrStatus::NR_INVALID_ARGUMENT, "path is not UTF-8".into()))?;
        let format = match format {
            NrFormat::NR_FORMAT_PLAIN => EdgeListFormat::Plain,
            NrFormat::NR_FORMAT_KONECT => EdgeListFormat::Konect,
            NrFormat::NR_FORMAT_SNAP => EdgeListFormat::Snap,
        };
        let file = File::open(path).map_err(|e| Failure(NrStatus::NR_DATA_ERROR, format!("{path}: {e}")))?;
        let report = load_edge_list(BufReader::new(file), format)?;
        write_handle(out, report.graph)
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`
/// (`2 * edge_count` entries). Self-loops and duplicates are dropped.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_from_edges(
    node_count: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guard(|| {
        let flat = slice(edges, edge_count * 2, "edges")?;
        let pairs = flat.chunks_exact(2).map(|e| (e[0] as usize, e[1] as usize));
        write_handle(out, Graph::from_edges(node_count, pairs)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn nr_graph_erdos_renyi(n: usize, p: f64, seed: u64, out: *mut *mut NrGraph) -> NrStatus {
    guard(|| write_handle(out, generate_synthetic(SyntheticKind::ErdosRenyi { n, p }, seed)?))
}

#[no_mangle]
pub unsafe extern "C" fn nr_graph_barabasi_albert(
    n: usize,
    m_attach: usize,
    seed: u64,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guard(|| write_handle(out, generate_synthetic(SyntheticKind::BarabasiAlbert { n, m_attach }, seed)?))
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_free(g: *mut NrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_node_count(g: *const NrGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.node_count())
}

/// Zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_edge_count(g: *const NrGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.edge_count())
}

#[no_mangle]
pub unsafe extern "C" fn nr_graph_degree(g: *const NrGraph, node: usize, out: *mut usize) -> NrStatus {
    guard(|| {
        let d = graph_ref(g)?.degree_of(node)?;
        *out.as_mut().ok_or_else(|| null("out"))? = d;
        Ok(())
    })
}

/// New graph without the listed nodes, reindexed in increasing order of
/// the surviving indices.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_delete_nodes(
    g: *const NrGraph,
    nodes: *const u32,
    len: usize,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let set: NodeSet = slice(nodes, len, "nodes")?.iter().map(|&v| v as usize).collect();
        write_handle(out, g.delete_nodes(&set)?.graph)
    })
}

/// Writes one score per node into `out`, which must hold `node_count` values.
#[no_mangle]
pub unsafe extern "C" fn nr_centrality(
    g: *const NrGraph,
    kind: NrMetric,
    katz_alpha: f64,
    out: *mut f64,
    out_len: usize,
) -> NrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if out_len < g.node_count() {
            return Err(Failure(
                NrStatus::NR_BUFFER_TOO_SMALL,
                format!("need {} values, buffer holds {out_len}", g.node_count()),
            ));
        }
        let v = compute(g, metric(kind), katz_alpha, Convergence::default())?;
        std::slice::from_raw_parts_mut(out, v.scores.len()).copy_from_slice(&v.scores);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn nr_spectral_radius(g: *const NrGraph, out: *mut f64) -> NrStatus {
    guard(|| {
        let r = spectral_radius(graph_ref(g)?, Convergence::default())?;
        *out.as_mut().ok_or_else(|| null("out"))? = r.value;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn nr_lcc_size(g: *const NrGraph, out: *mut usize) -> NrStatus {
    guard(|| {
        let s = lcc_size(graph_ref(g)?);
        *out.as_mut().ok_or_else(|| null("out"))? = s;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn nr_run_trial(g: *const NrGraph, spec: *const NrTrialSpec, out: *mut NrTrialResult) -> NrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let spec = spec.as_ref().ok_or_else(|| null("spec"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let model = match spec.model {
            NrModel::NR_MODEL_UNIFORM => SurvivalModel::uniform(spec.p)?,
            NrModel::NR_MODEL_BEST_CONNECTED => SurvivalModel::BestConnected,
        };
        let plan = RemovalPlan {
            tau: spec.tau,
            metric: metric(spec.metric),
            model,
            mode: if spec.deterministic {
                SelectionMode::DeterministicScore
            } else {
                SelectionMode::Stochastic
            },
            seed: spec.seed,
        };
        let conv = Convergence::default();
        let phi = compute(g, plan.metric, spec.katz_alpha, conv)?;
        let base = Baseline::measure(g, conv)?;
        let t = run_trial(g, &plan, &phi, base, conv)?;
        *out = NrTrialResult {
            requested_count: t.requested_count,
            actually_removed: t.actually_removed,
            lambda_tilde: t.lambda_tilde,
            lcc_tilde: t.lcc_tilde,
            rho: t.rho,
            gamma: t.gamma,
        };
        Ok(())
    })
}

/// Greedy NetShield selection of `k` nodes. `out_nodes` receives them in
/// selection order and must hold `k` entries. `shield_value` and
/// `eigen_drop` may be null.
#[no_mangle]
pub unsafe extern "C" fn nr_netshield_select(
    g: *const NrGraph,
    k: usize,
    out_nodes: *mut u32,
    out_len: usize,
    shield_value: *mut f64,
    eigen_drop: *mut f64,
) -> NrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out_nodes.is_null() {
            return Err(null("out_nodes"));
        }
        if out_len < k {
            return Err(Failure(
                NrStatus::NR_BUFFER_TOO_SMALL,
                format!("need {k} entries, buffer holds {out_len}"),
            ));
        }
        let s = netshield_select(g, k, Convergence::default())?;
        std::slice::from_raw_parts_mut(out_nodes, k).copy_from_slice(s.selected.as_slice());
        if let Some(v) = shield_value.as_mut() {
            *v = s.shield_value;
        }
        if let Some(v) = eigen_drop.as_mut() {
            *v = s.eigen_drop;
        }
        Ok(())
    })
}
