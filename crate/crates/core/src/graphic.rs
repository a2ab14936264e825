//! Graphicality via the Erdős–Gallai inequalities.
//!
//! Kept independent from the Havel–Hakimi code in `realization` so the two
//! can be checked against each other.

use alloc::vec::Vec;

/// True iff some simple graph has exactly these degrees (any order).
pub fn is_graphic(degrees: &[usize]) -> bool {
    let mut d: Vec<usize> = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let total: usize = d.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0usize);
    for &x in &d {
        prefix.push(prefix.last().unwrap() + x);
    }
    for k in 1..=n {
        // entries with d_i >= k form a prefix of length `c`
        let c = d.partition_point(|&x| x >= k);
        let tail_capped = if c > k { k * (c - k) } else { 0 };
        let tail_rest = total - prefix[c.max(k)];
        if prefix[k] > k * (k - 1) + tail_capped + tail_rest {
            return false;
        }
    }
    true
}
