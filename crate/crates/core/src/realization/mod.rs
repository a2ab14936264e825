//! Degree-sequence realization.
//!
//! [`havel_hakimi`] is the classic greedy construction: the node with the
//! largest remaining degree is joined to the nodes with the next largest
//! remaining degrees. [`improved_hh`] keeps the hub rule but picks
//! neighbors by a [`LinkProbabilityOracle`], which avoids the large cliques
//! the classic rule builds around high-degree nodes. [`labeling`] turns
//! freshly sampled nodes into per-node degree targets.
//!
//! Ties are broken by lowest node index everywhere, so every routine here is
//! deterministic.

mod buckets;
mod havel_hakimi;
mod improved;
pub mod labeling;
mod oracle;
mod trace;

use alloc::vec::Vec;

use thiserror::Error;

pub use havel_hakimi::{havel_hakimi, havel_hakimi_traced};
pub use improved::improved_hh;
pub use labeling::{
    assign_by_rank, assign_degree_sequence, initial_graph_from_oracle, initial_graph_from_scores,
    DegreeAssignment,
};
pub use oracle::{ConstantOracle, FnOracle, LinkProbabilityOracle, PairScores};
pub use trace::{RealizationTrace, TraceStep};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("degree sequence is not graphic: node {stuck_node} cannot be completed ({unmet} stubs unmet)")]
    NotGraphic { stuck_node: usize, unmet: usize },
    #[error("degree sequence is not graphic")]
    NotGraphicSequence,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("edge budget {requested} exceeds the {available} available node pairs")]
    TooManyEdges { requested: usize, available: usize },
}

/// Output of [`improved_hh`].
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub graph: Graph,
    /// Total unmet degree after hubs were skipped.
    pub stub_deficit: usize,
    /// Hubs that ran out of eligible neighbors, in the order they stalled.
    pub skipped_hubs: Vec<usize>,
    pub trace: Option<RealizationTrace>,
}
