//! Subgraph counts: triangles, wedges, claws, 4-cliques, 4-cycles.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Neighbors ranked above `v` in (degree, id) order. Every triangle and
/// 4-clique is discovered exactly once from its lowest-ranked node.
fn forward_adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let rank_key = |v: usize| (g.degree(v), v);
    (0..g.node_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| rank_key(u) > rank_key(v))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn intersect_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

pub(crate) fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub fn triangle_count(g: &Graph) -> u64 {
    let fwd = forward_adjacency(g);
    let mut total = 0u64;
    for v in 0..g.node_count() {
        for &u in &fwd[v] {
            total += count_common(&fwd[v], &fwd[u]) as u64;
        }
    }
    total
}

/// Triangles through each node.
pub fn node_triangles(g: &Graph) -> Vec<u64> {
    let fwd = forward_adjacency(g);
    let mut per_node = vec![0u64; g.node_count()];
    let mut common = Vec::new();
    for v in 0..g.node_count() {
        for &u in &fwd[v] {
            intersect_sorted(&fwd[v], &fwd[u], &mut common);
            for &w in &common {
                per_node[v] += 1;
                per_node[u] += 1;
                per_node[w] += 1;
            }
        }
    }
    per_node
}

/// Two-hop paths: sum over nodes of C(d, 2).
pub fn wedge_count(g: &Graph) -> u64 {
    (0..g.node_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// 3-stars: sum over nodes of C(d, 3).
pub fn claw_count(g: &Graph) -> u64 {
    (0..g.node_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) * d.saturating_sub(2) / 6
        })
        .sum()
}

/// Number of 4-cliques. This is the "square count" reported in property
/// reports.
pub fn square_count(g: &Graph) -> u64 {
    let fwd = forward_adjacency(g);
    let mut total = 0u64;
    let mut common = Vec::new();
    for v in 0..g.node_count() {
        for &u in &fwd[v] {
            intersect_sorted(&fwd[v], &fwd[u], &mut common);
            if common.len() < 2 {
                continue;
            }
            for &w in &common {
                total += count_common(&common, &fwd[w]) as u64;
            }
        }
    }
    total
}

/// Number of 4-cycles, chords allowed. Each cycle has two diagonals, so it
/// is the sum of C(c, 2) over node pairs with c common neighbors, halved.
pub fn four_cycle_count(g: &Graph) -> u64 {
    let n = g.node_count();
    let mut common = vec![0u64; n];
    let mut touched = Vec::new();
    let mut twice = 0u64;
    for v in 0..n {
        for &u in g.neighbors(v) {
            for &w in g.neighbors(u) {
                if w > v {
                    if common[w] == 0 {
                        touched.push(w);
                    }
                    common[w] += 1;
                }
            }
        }
        for &w in &touched {
            let c = common[w];
            twice += c * (c - 1) / 2;
            common[w] = 0;
        }
        touched.clear();
    }
    twice / 2
}
