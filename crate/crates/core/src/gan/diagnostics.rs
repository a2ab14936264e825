use alloc::vec::Vec;

use super::GanError;
use crate::linalg::{squared_distance, Matrix};
use crate::metrics::mmd::MIN_BANDWIDTH;
use crate::sum::{median, pairwise_sum};

/// Euclidean distances of all row pairs `i < j`, in row-major pair order.
pub fn pairwise_distances(x: &Matrix) -> Vec<f64> {
    let n = x.rows();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(libm::sqrt(squared_distance(x.row(i), x.row(j))));
        }
    }
    out
}

/// Squared MMD with a Gaussian kernel whose bandwidth is the median
/// pairwise distance of the pooled rows.
pub fn embedding_mmd(a: &Matrix, b: &Matrix) -> Result<f64, GanError> {
    if a.cols() != b.cols() {
        return Err(GanError::DimensionMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    if a.rows() == 0 || b.rows() == 0 {
        return Err(GanError::Empty);
    }
    let pooled = Matrix::from_vec(
        a.rows() + b.rows(),
        a.cols(),
        a.as_slice().iter().chain(b.as_slice()).copied().collect(),
    );
    let bandwidth = median(&pairwise_distances(&pooled)).max(MIN_BANDWIDTH);
    embedding_mmd_with_bandwidth(a, b, bandwidth)
}

pub fn embedding_mmd_with_bandwidth(
    a: &Matrix,
    b: &Matrix,
    bandwidth: f64,
) -> Result<f64, GanError> {
    if a.cols() != b.cols() {
        return Err(GanError::DimensionMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    if a.rows() == 0 || b.rows() == 0 {
        return Err(GanError::Empty);
    }
    let gamma = 1.0 / (2.0 * bandwidth * bandwidth);
    let mean_kernel = |x: &Matrix, y: &Matrix| {
        let rows: Vec<f64> = (0..x.rows())
            .map(|i| {
                let k: Vec<f64> = (0..y.rows())
                    .map(|j| libm::exp(-gamma * squared_distance(x.row(i), y.row(j))))
                    .collect();
                pairwise_sum(&k)
            })
            .collect();
        pairwise_sum(&rows) / (x.rows() as f64 * y.rows() as f64)
    };
    let v = mean_kernel(a, a) + mean_kernel(b, b) - 2.0 * mean_kernel(a, b);
    Ok(v.max(0.0))
}

/// Empirical CDF of pairwise row distances at `bins + 1` evenly spaced
/// thresholds from 0 to the largest distance.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCdf {
    pub thresholds: Vec<f64>,
    pub cdf: Vec<f64>,
}

pub fn pairwise_distance_cdf(x: &Matrix, bins: usize) -> DistanceCdf {
    let d = pairwise_distances(x);
    let max = d.iter().copied().fold(0.0, f64::max);
    let bins = bins.max(1);
    let thresholds: Vec<f64> = (0..=bins).map(|k| max * k as f64 / bins as f64).collect();
    DistanceCdf {
        cdf: empirical_cdf(&d, &thresholds),
        thresholds,
    }
}

/// Fraction of `values` at or below each threshold.
pub fn empirical_cdf(values: &[f64], thresholds: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len().max(1) as f64;
    thresholds
        .iter()
        .map(|&t| sorted.partition_point(|&v| v <= t) as f64 / n)
        .collect()
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::NAN;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(|x, y| x.total_cmp(y));
    b.sort_unstable_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut worst) = (0, 0, 0.0f64);
    while i < a.len() || j < b.len() {
        let t = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        worst = worst.max((i as f64 / na - j as f64 / nb).abs());
    }
    worst
}

/// KS statistic between the pairwise-distance distributions of two
/// embedding sets.
pub fn distance_ks(real: &Matrix, fake: &Matrix) -> f64 {
    ks_distance(&pairwise_distances(real), &pairwise_distances(fake))
}
