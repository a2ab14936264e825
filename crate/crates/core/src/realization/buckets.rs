use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Nodes keyed by remaining degree; max lookup returns the smallest id in
/// the highest nonempty bucket.
#[derive(Debug, Clone)]
pub(crate) struct RemainingDegreeBuckets {
    buckets: Vec<BTreeSet<usize>>,
    top: usize,
}

impl RemainingDegreeBuckets {
    /// Buckets holding every node with positive remaining degree.
    pub fn new(remaining: &[usize]) -> Self {
        let max = remaining.iter().copied().max().unwrap_or(0);
        let mut buckets = alloc::vec![BTreeSet::new(); max + 1];
        for (v, &r) in remaining.iter().enumerate() {
            if r > 0 {
                buckets[r].insert(v);
            }
        }
        RemainingDegreeBuckets { buckets, top: max }
    }

    pub fn max(&mut self) -> Option<usize> {
        while self.top > 0 {
            if let Some(&v) = self.buckets[self.top].first() {
                return Some(v);
            }
            self.top -= 1;
        }
        None
    }

    pub fn remove(&mut self, v: usize, remaining: usize) {
        if remaining > 0 {
            self.buckets[remaining].remove(&v);
        }
    }

    /// Moves `v` from bucket `remaining` to `remaining - 1`.
    pub fn decrement(&mut self, v: usize, remaining: usize) {
        self.buckets[remaining].remove(&v);
        if remaining > 1 {
            self.buckets[remaining - 1].insert(v);
        }
    }

    /// Nodes in descending remaining degree, ascending id within a degree.
    pub fn iter_desc(&self) -> impl Iterator<Item = usize> + '_ {
        self.buckets[1..=self.top]
            .iter()
            .rev()
            .flat_map(|b| b.iter().copied())
    }
}
