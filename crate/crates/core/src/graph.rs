//! Undirected simple graphs, degree sequences and edge overlap.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node count mismatch: {left} vs {right}")]
    NodeCountMismatch { left: usize, right: usize },
    #[error("correspondence is not a bijection over 0..{0}")]
    NotBijection(usize),
    #[error("reference graph has no edges")]
    EmptyReference,
    #[error("node id {id} out of range for {node_count} nodes")]
    NodeOutOfRange { id: usize, node_count: usize },
}

/// Records dropped while building a simple graph from raw edge records.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DropTally {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl DropTally {
    pub fn total(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

/// Immutable undirected simple graph over nodes `0..node_count`.
///
/// Adjacency lists are strictly increasing, symmetric and free of
/// self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    pub fn complete(node_count: usize) -> Self {
        let adjacency = (0..node_count)
            .map(|v| (0..node_count).filter(|&u| u != v).collect())
            .collect();
        Graph {
            adjacency,
            edge_count: node_count * node_count.saturating_sub(1) / 2,
        }
    }

    /// Builds a simple graph, silently dropping self-loops and repeated
    /// edges (in either orientation). The returned tally counts them.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<(Self, DropTally), GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); node_count];
        let mut tally = DropTally::default();
        let mut records = 0usize;
        for (u, v) in edges {
            for id in [u, v] {
                if id >= node_count {
                    return Err(GraphError::NodeOutOfRange { id, node_count });
                }
            }
            if u == v {
                tally.self_loops += 1;
                continue;
            }
            records += 1;
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut endpoints = 0;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            endpoints += list.len();
        }
        let edge_count = endpoints / 2;
        tally.duplicates = records - edge_count;
        Ok((
            Graph {
                adjacency,
                edge_count,
            },
            tally,
        ))
    }

    /// Builds a graph from edges known to be simple. Panics on self-loops or
    /// out-of-range ids; duplicates are merged.
    pub fn from_simple_edges<I>(node_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let (g, tally) = Graph::from_edges(node_count, edges).expect("edge endpoint out of range");
        assert_eq!(tally.self_loops, 0, "self-loop in simple edge list");
        g
    }

    pub(crate) fn from_adjacency_unchecked(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut endpoints = 0;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            endpoints += list.len();
        }
        Graph {
            adjacency,
            edge_count: endpoints / 2,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each undirected edge once as `(u, v)` with `u < v`, in lexicographic
    /// order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Subgraph induced by `nodes`; node `nodes[i]` becomes node `i`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            position[v] = i;
        }
        let adjacency = nodes
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&u| position[u] != usize::MAX)
                    .map(|&u| position[u])
                    .collect()
            })
            .collect();
        Graph::from_adjacency_unchecked(adjacency)
    }

    /// Graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.node_count());
        let mut adjacency = vec![Vec::new(); self.node_count()];
        for (v, list) in self.adjacency.iter().enumerate() {
            adjacency[perm[v]] = list.iter().map(|&u| perm[u]).collect();
        }
        Graph::from_adjacency_unchecked(adjacency)
    }

    /// Connected components, each sorted ascending, ordered by smallest
    /// member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Nodes of the largest connected component, ascending. Ties go to the
    /// component holding the smallest node id.
    pub fn largest_component_nodes(&self) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for component in self.connected_components() {
            if component.len() > best.len() {
                best = component;
            }
        }
        best
    }

    pub fn largest_connected_component(&self) -> Graph {
        self.induced_subgraph(&self.largest_component_nodes())
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees())
    }

    /// Checks the structural invariants. Used by tests and debug assertions.
    pub fn check_invariants(&self) -> bool {
        let mut endpoints = 0;
        for (v, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u == v || u >= self.node_count() || self.adjacency[u].binary_search(&v).is_err()
                {
                    return false;
                }
            }
            endpoints += list.len();
        }
        endpoints == 2 * self.edge_count
    }
}

/// Degrees sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for DegreeSequence {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(v: Vec<usize>) -> Self {
        DegreeSequence::new(v)
    }
}

/// `mapping[new_node] = original_node`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeCorrespondence {
    mapping: Vec<usize>,
}

impl NodeCorrespondence {
    pub fn identity(n: usize) -> Self {
        NodeCorrespondence {
            mapping: (0..n).collect(),
        }
    }

    pub fn new(mapping: Vec<usize>) -> Result<Self, GraphError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(GraphError::NotBijection(n));
            }
            seen[m] = true;
        }
        Ok(NodeCorrespondence { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    #[inline]
    pub fn original(&self, new_node: usize) -> usize {
        self.mapping[new_node]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    /// `self` followed by `other`: new -> self -> other.
    pub fn then(&self, other: &NodeCorrespondence) -> NodeCorrespondence {
        NodeCorrespondence {
            mapping: self.mapping.iter().map(|&m| other.mapping[m]).collect(),
        }
    }
}

/// Fraction of `reference` edges reproduced by `g` under `corr`.
pub fn edge_overlap(
    g: &Graph,
    reference: &Graph,
    corr: &NodeCorrespondence,
) -> Result<f64, GraphError> {
    if g.node_count() != reference.node_count() {
        return Err(GraphError::NodeCountMismatch {
            left: g.node_count(),
            right: reference.node_count(),
        });
    }
    if corr.len() != g.node_count() {
        return Err(GraphError::NodeCountMismatch {
            left: corr.len(),
            right: g.node_count(),
        });
    }
    if reference.edge_count() == 0 {
        return Err(GraphError::EmptyReference);
    }
    let shared = g
        .edges()
        .filter(|&(u, v)| reference.has_edge(corr.original(u), corr.original(v)))
        .count();
    Ok(shared as f64 / reference.edge_count() as f64)
}
