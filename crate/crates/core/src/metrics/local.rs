//! Per-node distributions.

use alloc::vec::Vec;

use super::counts::{count_common, node_triangles};
use crate::graph::Graph;

/// One value per node of the source graph.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeStatisticDistribution {
    pub values: Vec<f64>,
}

impl NodeStatisticDistribution {
    pub fn new(values: Vec<f64>) -> Self {
        NodeStatisticDistribution { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Triangles through `v` over C(d(v), 2); 0 when d(v) < 2.
pub fn local_clustering_distribution(g: &Graph) -> NodeStatisticDistribution {
    let triangles = node_triangles(g);
    let values = (0..g.node_count())
        .map(|v| {
            let d = g.degree(v) as f64;
            if d < 2.0 {
                0.0
            } else {
                triangles[v] as f64 / (d * (d - 1.0) / 2.0)
            }
        })
        .collect();
    NodeStatisticDistribution::new(values)
}

/// Square clustering of Lind, González and Herrmann: for every pair of
/// neighbors `u, w` of `v`, the squares `v-u-x-w` that exist, over the
/// squares that could exist given the spare degree of `u` and `w`.
pub fn local_square_clustering_distribution(g: &Graph) -> NodeStatisticDistribution {
    let values = (0..g.node_count())
        .map(|v| {
            let nbrs = g.neighbors(v);
            if nbrs.len() < 2 {
                return 0.0;
            }
            let mut squares = 0usize;
            let mut potential = 0usize;
            for (a, &u) in nbrs.iter().enumerate() {
                for &w in &nbrs[a + 1..] {
                    // v itself is always a common neighbor of u and w
                    let q = count_common(g.neighbors(u), g.neighbors(w)) - 1;
                    let theta = usize::from(g.has_edge(u, w));
                    let used = 1 + q + theta;
                    squares += q;
                    potential += (g.degree(u) - used) + (g.degree(w) - used) + q;
                }
            }
            if potential == 0 {
                0.0
            } else {
                squares as f64 / potential as f64
            }
        })
        .collect();
    NodeStatisticDistribution::new(values)
}

pub fn degree_distribution(g: &Graph) -> NodeStatisticDistribution {
    NodeStatisticDistribution::new((0..g.node_count()).map(|v| g.degree(v) as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn star4() -> Graph {
        Graph::from_simple_edges(4, [(0, 1), (0, 2), (0, 3)])
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_simple_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn local_clustering_examples() {
        assert_eq!(
            local_clustering_distribution(&Graph::complete(3)).values,
            vec![1.0; 3]
        );
        assert_eq!(local_clustering_distribution(&star4()).values, vec![0.0; 4]);
        let p4 = Graph::from_simple_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(local_clustering_distribution(&p4).values, vec![0.0; 4]);
    }

    #[test]
    fn square_clustering_examples() {
        assert_eq!(
            local_square_clustering_distribution(&cycle(4)).values,
            vec![1.0; 4]
        );
        assert_eq!(
            local_square_clustering_distribution(&Graph::complete(3)).values,
            vec![0.0; 3]
        );
        let tree = Graph::from_simple_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]);
        assert_eq!(
            local_square_clustering_distribution(&tree).values,
            vec![0.0; 6]
        );
    }

    #[test]
    fn degrees_as_reals() {
        assert_eq!(
            degree_distribution(&star4()).values,
            vec![3.0, 1.0, 1.0, 1.0]
        );
    }
}
