use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::graph::Graph;

/// Draws non-edges without repeating any pair until [`reset`] is called.
///
/// [`reset`]: NegativeSampler::reset
#[derive(Debug, Clone)]
pub struct NegativeSampler {
    used: BTreeSet<(usize, usize)>,
}

impl Default for NegativeSampler {
    fn default() -> Self {
        Self::new()
    }
}

impl NegativeSampler {
    pub fn new() -> Self {
        NegativeSampler {
            used: BTreeSet::new(),
        }
    }

    pub fn reset(&mut self) {
        self.used.clear();
    }

    pub fn used(&self) -> usize {
        self.used.len()
    }

    /// Unused non-edges of `g`.
    pub fn available(&self, g: &Graph) -> usize {
        let n = g.node_count();
        n * n.saturating_sub(1) / 2 - g.edge_count() - self.used.len()
    }

    /// Up to `count` fresh non-edges `(u, v)` with `u < v`, fewer only when
    /// the graph runs out of them.
    pub fn sample<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        count: usize,
        rng: &mut R,
    ) -> Vec<(usize, usize)> {
        let available = self.available(g);
        let count = count.min(available);
        let n = g.node_count();
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        if 2 * count <= available {
            while out.len() < count {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                if a == b {
                    continue;
                }
                let pair = (a.min(b), a.max(b));
                if g.has_edge(pair.0, pair.1) || !self.used.insert(pair) {
                    continue;
                }
                out.push(pair);
            }
        } else {
            let mut pool = Vec::with_capacity(available);
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) && !self.used.contains(&(u, v)) {
                        pool.push((u, v));
                    }
                }
            }
            let mut picked: Vec<usize> = index::sample(rng, pool.len(), count).into_vec();
            picked.sort_unstable();
            for k in picked {
                self.used.insert(pool[k]);
                out.push(pool[k]);
            }
        }
        out
    }
}
