use alloc::vec::Vec;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub hub: usize,
    pub attached: Vec<usize>,
    /// FNV-1a hash of the remaining-degree vector after this step.
    pub snapshot_hash: u64,
}

/// Hub-by-hub record of a realization run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RealizationTrace {
    pub node_count: usize,
    pub steps: Vec<TraceStep>,
}

impl RealizationTrace {
    pub fn new(node_count: usize) -> Self {
        RealizationTrace {
            node_count,
            steps: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, hub: usize, attached: Vec<usize>, remaining: &[usize]) {
        self.steps.push(TraceStep {
            hub,
            attached,
            snapshot_hash: remaining_hash(remaining),
        });
    }

    /// Rebuilds the realized graph from the recorded attachments.
    pub fn replay(&self) -> Graph {
        let edges = self
            .steps
            .iter()
            .flat_map(|s| s.attached.iter().map(move |&t| (s.hub, t)));
        Graph::from_simple_edges(self.node_count, edges)
    }
}

pub(crate) fn remaining_hash(remaining: &[usize]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &r in remaining {
        for b in (r as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}
