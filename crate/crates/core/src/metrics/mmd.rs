//! Gaussian-kernel maximum mean discrepancy between scalar samples.

use alloc::vec::Vec;

use super::local::NodeStatisticDistribution;
use super::MetricError;
use crate::sum::pairwise_sum;

/// Smallest bandwidth allowed by the median heuristic.
pub const MIN_BANDWIDTH: f64 = 1e-8;

/// Number of pairs `(i < j)` of a sorted slice with `v[j] - v[i] <= t`.
fn pairs_within(sorted: &[f64], t: f64) -> u64 {
    let mut count = 0u64;
    let mut lo = 0;
    for j in 0..sorted.len() {
        while sorted[j] - sorted[lo] > t {
            lo += 1;
        }
        count += (j - lo) as u64;
    }
    count
}

/// k-th smallest (1-based) pairwise absolute difference of a sorted slice.
/// Bisects over the bit patterns of nonnegative doubles, which are ordered
/// like the values themselves.
fn kth_pairwise_difference(sorted: &[f64], k: u64) -> f64 {
    let (mut lo, mut hi) = (0u64, f64::INFINITY.to_bits());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pairs_within(sorted, f64::from_bits(mid)) >= k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    f64::from_bits(lo)
}

/// Median of `|a - b|` over all unordered pairs of distinct positions.
pub fn median_pairwise_difference(values: &[f64]) -> f64 {
    let n = values.len() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs == 0 {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    if pairs % 2 == 1 {
        kth_pairwise_difference(&sorted, pairs / 2 + 1)
    } else {
        0.5 * (kth_pairwise_difference(&sorted, pairs / 2)
            + kth_pairwise_difference(&sorted, pairs / 2 + 1))
    }
}

fn kernel_mean(a: &[f64], b: &[f64], inv_two_sigma_sq: f64) -> f64 {
    let mut row = Vec::with_capacity(b.len());
    let row_sums: Vec<f64> = a
        .iter()
        .map(|&x| {
            row.clear();
            row.extend(b.iter().map(|&y| {
                let d = x - y;
                libm::exp(-d * d * inv_two_sigma_sq)
            }));
            pairwise_sum(&row)
        })
        .collect();
    pairwise_sum(&row_sums) / (a.len() as f64 * b.len() as f64)
}

/// Biased squared MMD with a Gaussian kernel at a given bandwidth.
pub fn mmd_with_bandwidth(a: &[f64], b: &[f64], bandwidth: f64) -> Result<f64, MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptyDistribution);
    }
    // sorting makes the estimate independent of sample order, and
    // identical multisets produce bit-identical kernel means
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable_by(f64::total_cmp);
    y.sort_unstable_by(f64::total_cmp);
    let gamma = 1.0 / (2.0 * bandwidth * bandwidth);
    let kxx = kernel_mean(&x, &x, gamma);
    let kyy = kernel_mean(&y, &y, gamma);
    let kxy = kernel_mean(&x, &y, gamma);
    Ok((kxx + kyy - 2.0 * kxy).max(0.0))
}

/// Squared MMD; bandwidth is the median pairwise absolute difference of
/// the pooled sample, floored at [`MIN_BANDWIDTH`].
pub fn mmd(
    a: &NodeStatisticDistribution,
    b: &NodeStatisticDistribution,
) -> Result<f64, MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptyDistribution);
    }
    let mut pooled = a.values.clone();
    pooled.extend_from_slice(&b.values);
    let bandwidth = median_pairwise_difference(&pooled).max(MIN_BANDWIDTH);
    mmd_with_bandwidth(&a.values, &b.values, bandwidth)
}
