// SPDX-License-Identifier: Apache-2.0

//! Network robustness under failure-biased targeted node removal.
//!
//! Graphs are loaded from edge lists into a compact CSR form. Nodes are ranked
//! by a centrality metric, failures are drawn from a survival model, and the
//! top-ranked failed nodes are removed while tracking the spectral radius and
//! the largest connected component. NetShield provides an eigen-drop
//! baseline for the same failed sets.

pub mod centrality;
pub mod cli;
pub mod config;
pub mod error;
pub mod failure;
pub mod format;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod netshield;
pub mod output;
pub mod spectral;

pub use centrality::{CentralityVector, Metric};
pub use error::{Error, Result};
pub use failure::{SelectionMode, SurvivalModel};
pub use graph::{load_edge_list, EdgeListFormat, Graph, NodeSet};
pub use harness::{run_netshield_comparison, run_sweep, ExperimentConfig};
pub use spectral::{spectral_radius, Convergence};
