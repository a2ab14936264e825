use alloc::vec::Vec;

/// Symmetric, deterministic link probability between two nodes.
pub trait LinkProbabilityOracle {
    fn prob(&self, i: usize, j: usize) -> f64;
}

impl<T: LinkProbabilityOracle + ?Sized> LinkProbabilityOracle for &T {
    fn prob(&self, i: usize, j: usize) -> f64 {
        (**self).prob(i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantOracle(pub f64);

impl LinkProbabilityOracle for ConstantOracle {
    fn prob(&self, _: usize, _: usize) -> f64 {
        self.0
    }
}

/// Wraps a closure. The closure is called with `i < j`, so symmetry holds
/// even if the closure itself is not symmetric.
pub struct FnOracle<F>(pub F);

impl<F: Fn(usize, usize) -> f64> LinkProbabilityOracle for FnOracle<F> {
    fn prob(&self, i: usize, j: usize) -> f64 {
        if i <= j {
            (self.0)(i, j)
        } else {
            (self.0)(j, i)
        }
    }
}

/// All pair probabilities of an `n`-node oracle, stored as the strict upper
/// triangle in row order.
#[derive(Debug, Clone, PartialEq)]
pub struct PairScores {
    n: usize,
    scores: Vec<f64>,
}

#[inline]
fn offset(n: usize, i: usize) -> usize {
    // pairs (a, b), a < i, come first
    i * (2 * n - i - 1) / 2
}

impl PairScores {
    pub fn pair_count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn from_oracle<O: LinkProbabilityOracle + ?Sized>(n: usize, oracle: &O) -> Self {
        let mut scores = Vec::with_capacity(Self::pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                scores.push(oracle.prob(i, j));
            }
        }
        PairScores { n, scores }
    }

    /// Takes precomputed upper-triangle scores in row order, e.g. filled in
    /// parallel by the caller.
    pub fn from_upper_triangle(n: usize, scores: Vec<f64>) -> Self {
        assert_eq!(scores.len(), Self::pair_count(n));
        PairScores { n, scores }
    }

    /// Row `i` of the upper triangle: scores of `(i, j)` for `j > i`.
    pub fn row(&self, i: usize) -> &[f64] {
        let start = offset(self.n, i);
        &self.scores[start..start + (self.n - i - 1)]
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }
}

impl LinkProbabilityOracle for PairScores {
    #[inline]
    fn prob(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        debug_assert!(a != b && b < self.n);
        self.scores[offset(self.n, a) + (b - a - 1)]
    }
}
