//! Global statistics that depend only on the degree sequence, plus the two
//! clustering ratios.

use alloc::vec::Vec;

use super::counts::{claw_count, triangle_count, wedge_count};
use super::{MetricError, MetricFlag, MetricValue};
use crate::graph::Graph;
use crate::sum::pairwise_sum;

// Summing in sorted order makes the float results depend only on the
// degree multiset, not on node order.
fn sorted(degrees: &[usize]) -> Vec<usize> {
    let mut s = degrees.to_vec();
    s.sort_unstable();
    s
}

/// Transitivity: 3 * triangles / wedges. Graphs without wedges give 0,
/// flagged.
pub fn global_clustering_coefficient(g: &Graph) -> MetricValue {
    let wedges = wedge_count(g);
    if wedges == 0 {
        return MetricValue::flagged(0.0, MetricFlag::NoWedges);
    }
    MetricValue::ok(3.0 * triangle_count(g) as f64 / wedges as f64)
}

/// 3 * triangles / claws (3-stars). This normalization is the one behind
/// the clustering column of the published ER/BA and dataset property
/// tables, so property reports use it.
pub fn claw_clustering_coefficient(g: &Graph) -> MetricValue {
    let claws = claw_count(g);
    if claws == 0 {
        return MetricValue::flagged(0.0, MetricFlag::NoClaws);
    }
    MetricValue::ok(3.0 * triangle_count(g) as f64 / claws as f64)
}

/// Maximum-likelihood power-law exponent `1 + n / sum(ln(d / d_min))` over
/// nodes of positive degree.
pub fn powerlaw_exponent_of(degrees: &[usize]) -> MetricValue {
    let positive: Vec<f64> = sorted(degrees)
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| d as f64)
        .collect();
    let Some(d_min) = positive.iter().copied().reduce(f64::min) else {
        return MetricValue::flagged(f64::INFINITY, MetricFlag::Undefined);
    };
    let logs: Vec<f64> = positive.iter().map(|&d| libm::log(d / d_min)).collect();
    let denom = pairwise_sum(&logs);
    if denom <= 0.0 {
        return MetricValue::flagged(f64::INFINITY, MetricFlag::Undefined);
    }
    MetricValue::ok(1.0 + positive.len() as f64 / denom)
}

pub fn powerlaw_exponent(g: &Graph) -> MetricValue {
    powerlaw_exponent_of(&g.degrees())
}

/// Entropy of the edge-endpoint distribution `d / 2|E|`, normalized by
/// `ln n`; 1 for regular graphs.
pub fn relative_edge_distribution_entropy_of(degrees: &[usize]) -> Result<f64, MetricError> {
    let two_m: usize = degrees.iter().sum();
    if two_m == 0 {
        return Err(MetricError::Edgeless);
    }
    let total = two_m as f64;
    let terms: Vec<f64> = sorted(degrees)
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| {
            let p = d as f64 / total;
            -p * libm::log(p)
        })
        .collect();
    Ok(pairwise_sum(&terms) / libm::log(degrees.len() as f64))
}

pub fn relative_edge_distribution_entropy(g: &Graph) -> Result<f64, MetricError> {
    relative_edge_distribution_entropy_of(&g.degrees())
}

/// Gini coefficient of the degrees, sorted ascending with 1-based ranks.
pub fn gini_coefficient_of(degrees: &[usize]) -> Result<f64, MetricError> {
    let total: usize = degrees.iter().sum();
    if total == 0 {
        return Err(MetricError::Edgeless);
    }
    let sorted = sorted(degrees);
    let n = sorted.len() as f64;
    // exact integer arithmetic keeps regular graphs at exactly 0
    let weighted: u128 = sorted
        .iter()
        .enumerate()
        .map(|(i, &d)| (i as u128 + 1) * d as u128)
        .sum();
    Ok(2.0 * weighted as f64 / (n * total as f64) - (n + 1.0) / n)
}

pub fn gini_coefficient(g: &Graph) -> Result<f64, MetricError> {
    gini_coefficient_of(&g.degrees())
}

pub fn wedge_count_of(degrees: &[usize]) -> u64 {
    degrees
        .iter()
        .map(|&d| {
            let d = d as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}
