//! Classical random graph generators.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::Rng as _;
use thiserror::Error;

use crate::graph::Graph;
use crate::rng::{seeded, Rng};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaselineError {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("attachment count m={m} needs 1 <= m < n={n}")]
    InvalidAttachment { m: usize, n: usize },
    #[error("no simple pairing found in {attempts} attempts")]
    RetriesExhausted { attempts: usize },
}

fn check_probability(p: f64) -> Result<(), BaselineError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(BaselineError::InvalidProbability(p))
    }
}

/// G(n, p).
pub fn er_graph(n: usize, p: f64, seed: u64) -> Result<Graph, BaselineError> {
    check_probability(p)?;
    let mut rng = seeded(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_simple_edges(n, edges))
}

/// Barabási–Albert preferential attachment.
///
/// Starts from `m` isolated nodes. The first arrival links to all of them;
/// every later arrival links to `m` distinct nodes drawn from the urn of
/// edge endpoints.
pub fn ba_graph(n: usize, m: usize, seed: u64) -> Result<Graph, BaselineError> {
    if m == 0 || m >= n {
        return Err(BaselineError::InvalidAttachment { m, n });
    }
    let mut rng = seeded(seed);
    let mut edges = Vec::with_capacity(m * (n - m));
    let mut urn: Vec<usize> = Vec::with_capacity(2 * m * (n - m));
    let mut targets: Vec<usize> = (0..m).collect();
    let mut picked = vec![false; n];
    for source in m..n {
        for &t in &targets {
            edges.push((source, t));
        }
        urn.extend_from_slice(&targets);
        urn.extend(core::iter::repeat_n(source, m));
        targets = random_subset(&urn, m, &mut picked, &mut rng);
    }
    Ok(Graph::from_simple_edges(n, edges))
}

fn random_subset(urn: &[usize], m: usize, picked: &mut [bool], rng: &mut Rng) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let x = urn[rng.random_range(0..urn.len())];
        if !picked[x] {
            picked[x] = true;
            out.push(x);
        }
    }
    for &x in &out {
        picked[x] = false;
    }
    out
}

/// Chung–Lu: pair `(i, j)` is an edge with probability
/// `min(d_i d_j / sum(d), 1)`.
pub fn chung_lu(degrees: &[usize], seed: u64) -> Graph {
    let n = degrees.len();
    let total: usize = degrees.iter().sum();
    if total == 0 {
        return Graph::empty(n);
    }
    let total = total as f64;
    let mut rng = seeded(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        if degrees[i] == 0 {
            continue;
        }
        for j in i + 1..n {
            if degrees[j] == 0 {
                continue;
            }
            let p = (degrees[i] as f64 * degrees[j] as f64 / total).min(1.0);
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_simple_edges(n, edges)
}

/// Configuration model keeping a share of the original edges.
///
/// A uniform `ceil(target_overlap * |E|)` subset of `g0`'s edges is kept and
/// the leftover stubs are paired uniformly. Pairings with self-loops,
/// repeated edges or edges that clash with the kept set are thrown away
/// whole and redrawn, up to `max_retries` times. On success every degree
/// matches `g0`.
pub fn conf_model(
    g0: &Graph,
    target_overlap: f64,
    max_retries: usize,
    seed: u64,
) -> Result<Graph, BaselineError> {
    check_probability(target_overlap)?;
    let n = g0.node_count();
    let all: Vec<(usize, usize)> = g0.edges().collect();
    let keep_count = libm::ceil((target_overlap * all.len() as f64) - 1e-9).max(0.0) as usize;
    let keep_count = keep_count.min(all.len());
    let mut rng = seeded(seed);

    let mut kept: Vec<(usize, usize)> = index::sample(&mut rng, all.len(), keep_count)
        .into_iter()
        .map(|k| all[k])
        .collect();
    kept.sort_unstable();
    let kept_graph = Graph::from_simple_edges(n, kept.iter().copied());

    let mut stubs = Vec::new();
    for v in 0..n {
        let free = g0.degree(v) - kept_graph.degree(v);
        stubs.extend(core::iter::repeat_n(v, free));
    }
    if stubs.is_empty() {
        return Ok(kept_graph);
    }

    for _ in 0..max_retries.max(1) {
        stubs.shuffle(&mut rng);
        let mut new_edges: Vec<(usize, usize)> = stubs
            .chunks_exact(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        if new_edges
            .iter()
            .any(|&(u, v)| u == v || kept_graph.has_edge(u, v))
        {
            continue;
        }
        new_edges.sort_unstable();
        if new_edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Ok(Graph::from_simple_edges(
            n,
            kept.into_iter().chain(new_edges),
        ));
    }
    Err(BaselineError::RetriesExhausted {
        attempts: max_retries.max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        assert_eq!(er_graph(6, 0.0, 1).unwrap(), Graph::empty(6));
        assert_eq!(er_graph(6, 1.0, 1).unwrap(), Graph::complete(6));
        assert!(er_graph(6, 1.5, 1).is_err());
    }

    #[test]
    fn ba_shape() {
        // one arrival onto isolated seeds gives a star
        let star = ba_graph(5, 4, 3).unwrap();
        assert_eq!(star.degrees(), vec![1, 1, 1, 1, 4]);
        let g = ba_graph(300, 3, 9).unwrap();
        assert_eq!(g.edge_count(), 3 * 297);
        assert!(g.check_invariants());
        assert!(ba_graph(3, 3, 0).is_err());
        assert!(ba_graph(3, 0, 0).is_err());
    }

    #[test]
    fn seeds_reproduce() {
        assert_eq!(er_graph(50, 0.1, 5).unwrap(), er_graph(50, 0.1, 5).unwrap());
        assert_eq!(ba_graph(80, 2, 5).unwrap(), ba_graph(80, 2, 5).unwrap());
        assert_ne!(er_graph(50, 0.1, 5).unwrap(), er_graph(50, 0.1, 6).unwrap());
    }

    #[test]
    fn chung_lu_without_degrees() {
        assert_eq!(chung_lu(&[0, 0, 0], 1), Graph::empty(3));
    }

    #[test]
    fn conf_full_overlap_is_identity() {
        let g = ba_graph(40, 2, 1).unwrap();
        assert_eq!(conf_model(&g, 1.0, 1, 7).unwrap(), g);
    }

    #[test]
    fn conf_preserves_degrees() {
        let g = er_graph(60, 0.08, 2).unwrap();
        let h = conf_model(&g, 0.5, 10_000, 3).unwrap();
        assert_eq!(h.degrees(), g.degrees());
        assert!(h.check_invariants());
    }
}
