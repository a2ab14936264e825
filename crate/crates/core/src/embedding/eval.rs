use alloc::vec::Vec;
use core::cmp::Ordering;

use super::predictor::{LinkPredictor, PredictorOracle};
use super::sampler::NegativeSampler;
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::realization::LinkProbabilityOracle;
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkScores {
    pub auc: f64,
    pub ap: f64,
}

fn descending(a: &f64, b: &f64) -> Ordering {
    b.total_cmp(a)
}

/// Area under the ROC curve; tied scores count one half.
pub fn roc_auc(positive: &[f64], negative: &[f64]) -> f64 {
    if positive.is_empty() || negative.is_empty() {
        return f64::NAN;
    }
    let mut neg = negative.to_vec();
    neg.sort_unstable_by(|a, b| a.total_cmp(b));
    let mut wins = 0.0;
    for &p in positive {
        let below = neg.partition_point(|&x| x < p);
        let not_above = neg.partition_point(|&x| x <= p);
        wins += below as f64 + 0.5 * (not_above - below) as f64;
    }
    wins / (positive.len() as f64 * neg.len() as f64)
}

/// Average precision: precision at each distinct threshold weighted by the
/// recall gained there.
pub fn average_precision(positive: &[f64], negative: &[f64]) -> f64 {
    if positive.is_empty() {
        return f64::NAN;
    }
    let mut all: Vec<(f64, bool)> = positive
        .iter()
        .map(|&s| (s, true))
        .chain(negative.iter().map(|&s| (s, false)))
        .collect();
    all.sort_unstable_by(|a, b| descending(&a.0, &b.0));
    let total_pos = positive.len() as f64;
    let (mut tp, mut seen, mut ap) = (0usize, 0usize, 0.0);
    let mut i = 0;
    while i < all.len() {
        let t = all[i].0;
        let start_tp = tp;
        while i < all.len() && all[i].0.total_cmp(&t) == Ordering::Equal {
            tp += all[i].1 as usize;
            seen += 1;
            i += 1;
        }
        if tp > start_tp {
            ap += (tp - start_tp) as f64 / total_pos * (tp as f64 / seen as f64);
        }
    }
    ap
}

/// AUC and AP of a predictor over the edges of `g` against either every
/// non-edge (`sample_negatives = None`) or a uniform sample of them.
pub fn evaluate_predictor(
    predictor: &LinkPredictor,
    embeddings: &Matrix,
    g: &Graph,
    sample_negatives: Option<usize>,
    seed: u64,
) -> LinkScores {
    let oracle = PredictorOracle {
        predictor,
        embeddings,
    };
    evaluate_oracle(&oracle, g, sample_negatives, seed)
}

pub fn evaluate_oracle<O: LinkProbabilityOracle + ?Sized>(
    oracle: &O,
    g: &Graph,
    sample_negatives: Option<usize>,
    seed: u64,
) -> LinkScores {
    let positive: Vec<f64> = g.edges().map(|(u, v)| oracle.prob(u, v)).collect();
    let negative: Vec<f64> = match sample_negatives {
        None => {
            let n = g.node_count();
            let mut out = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        out.push(oracle.prob(u, v));
                    }
                }
            }
            out
        }
        Some(k) => NegativeSampler::new()
            .sample(g, k, &mut seeded(seed))
            .into_iter()
            .map(|(u, v)| oracle.prob(u, v))
            .collect(),
    };
    LinkScores {
        auc: roc_auc(&positive, &negative),
        ap: average_precision(&positive, &negative),
    }
}
