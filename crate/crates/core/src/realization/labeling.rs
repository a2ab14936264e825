//! Turning a set of new nodes into degree targets.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::oracle::{LinkProbabilityOracle, PairScores};
use super::RealizationError;
use crate::graph::{Graph, NodeCorrespondence};

/// Per-node degree targets plus the new-to-original node matching they came
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeAssignment {
    pub targets: Vec<usize>,
    pub correspondence: NodeCorrespondence,
}

/// Keeps the `target_edges` highest scoring pairs. Ties at the cutoff go to
/// the lexicographically smaller pair.
pub fn initial_graph_from_oracle<O: LinkProbabilityOracle + ?Sized>(
    n: usize,
    oracle: &O,
    target_edges: usize,
) -> Result<Graph, RealizationError> {
    initial_graph_from_scores(&PairScores::from_oracle(n, oracle), target_edges)
}

pub fn initial_graph_from_scores(
    scores: &PairScores,
    target_edges: usize,
) -> Result<Graph, RealizationError> {
    let n = scores.node_count();
    let available = PairScores::pair_count(n);
    if target_edges > available {
        return Err(RealizationError::TooManyEdges {
            requested: target_edges,
            available,
        });
    }
    if target_edges == 0 {
        return Ok(Graph::empty(n));
    }
    // pair index order is lexicographic order
    let mut ranked: Vec<(f64, usize)> = scores
        .as_slice()
        .iter()
        .enumerate()
        .map(|(k, &s)| (s, k))
        .collect();
    let order = |a: &(f64, usize), b: &(f64, usize)| -> Ordering {
        b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1))
    };
    if target_edges < ranked.len() {
        ranked.select_nth_unstable_by(target_edges - 1, order);
    }
    let mut keep: Vec<usize> = ranked[..target_edges].iter().map(|p| p.1).collect();
    keep.sort_unstable();

    let mut edges = Vec::with_capacity(target_edges);
    let mut next = keep.iter().copied().peekable();
    let mut start = 0;
    for i in 0..n {
        let len = n - i - 1;
        while let Some(&k) = next.peek() {
            if k >= start + len {
                break;
            }
            edges.push((i, i + 1 + (k - start)));
            next.next();
        }
        start += len;
    }
    Ok(Graph::from_simple_edges(n, edges))
}

/// Nodes sorted by nonincreasing degree, ties by id.
fn rank_order(degrees: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..degrees.len()).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    order
}

/// Matches new nodes to original nodes by degree rank: the new node ranked
/// `i` by `initial_degrees` takes the degree of the original node ranked `i`
/// by `original_degrees`.
pub fn assign_by_rank(
    initial_degrees: &[usize],
    original_degrees: &[usize],
) -> Result<DegreeAssignment, RealizationError> {
    let n = initial_degrees.len();
    if n != original_degrees.len() {
        return Err(RealizationError::LengthMismatch {
            left: n,
            right: original_degrees.len(),
        });
    }
    let new_order = rank_order(initial_degrees);
    let original_order = rank_order(original_degrees);
    let mut targets = alloc::vec![0; n];
    let mut mapping = alloc::vec![0; n];
    for (&new, &orig) in new_order.iter().zip(&original_order) {
        targets[new] = original_degrees[orig];
        mapping[new] = orig;
    }
    let correspondence = NodeCorrespondence::new(mapping).expect("rank matching is a bijection");
    Ok(DegreeAssignment {
        targets,
        correspondence,
    })
}

pub fn assign_degree_sequence(
    initial: &Graph,
    original_degrees: &[usize],
) -> Result<DegreeAssignment, RealizationError> {
    assign_by_rank(&initial.degrees(), original_degrees)
}
