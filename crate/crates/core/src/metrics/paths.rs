use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::sum::median;

/// Mean BFS distance from `source` to every node it reaches. Unreachable
/// nodes are ignored; a node reaching nothing has mean 0.
fn mean_distance_from(g: &Graph, source: usize, dist: &mut [u32], queue: &mut Vec<usize>) -> f64 {
    queue.clear();
    dist[source] = 0;
    queue.push(source);
    let mut head = 0;
    let mut total = 0u64;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let next = dist[v] + 1;
        for &u in g.neighbors(v) {
            if dist[u] == u32::MAX {
                dist[u] = next;
                total += next as u64;
                queue.push(u);
            }
        }
    }
    let reached = queue.len() - 1;
    for &v in queue.iter() {
        dist[v] = u32::MAX;
    }
    if reached == 0 {
        0.0
    } else {
        total as f64 / reached as f64
    }
}

/// Per-node mean shortest-path length within each node's component.
pub fn mean_path_lengths(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    (0..n)
        .map(|v| mean_distance_from(g, v, &mut dist, &mut queue))
        .collect()
}

/// Median over nodes of the mean shortest-path length to reachable nodes.
pub fn characteristic_path_length(g: &Graph) -> f64 {
    if g.node_count() <= 1 {
        return 0.0;
    }
    median(&mean_path_lengths(g))
}

pub fn lcc_size(g: &Graph) -> usize {
    g.connected_components()
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}
