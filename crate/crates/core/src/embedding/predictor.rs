use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::linalg::{dot, Matrix};
use crate::nn::{leaky_relu, sigmoid, Dense};
use crate::realization::LinkProbabilityOracle;

/// `sigmoid(w2 · lrelu(W1ᵀ (z_u ∘ z_v) + b1) + b2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkPredictor {
    /// `d x h`.
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
    pub leak: f64,
}

impl LinkPredictor {
    pub fn zeros(dim: usize, hidden: usize, leak: f64) -> Self {
        LinkPredictor {
            w1: Matrix::zeros(dim, hidden),
            b1: vec![0.0; hidden],
            w2: vec![0.0; hidden],
            b2: 0.0,
            leak,
        }
    }

    pub fn init<R: Rng + ?Sized>(dim: usize, hidden: usize, leak: f64, rng: &mut R) -> Self {
        let first = Dense::init(dim, hidden, rng);
        let second = Dense::init(hidden, 1, rng);
        LinkPredictor {
            w1: first.weight,
            b1: first.bias,
            w2: second.weight.into_vec(),
            b2: second.bias[0],
            leak,
        }
    }

    pub fn dim(&self) -> usize {
        self.w1.rows()
    }

    pub fn hidden(&self) -> usize {
        self.w1.cols()
    }

    /// Pre-sigmoid score. `scratch` must hold `hidden()` values.
    pub fn logit_with(&self, zu: &[f64], zv: &[f64], scratch: &mut [f64]) -> f64 {
        assert_eq!(zu.len(), self.dim(), "embedding dimension mismatch");
        assert_eq!(zv.len(), self.dim(), "embedding dimension mismatch");
        scratch.copy_from_slice(&self.b1);
        for (k, (&a, &b)) in zu.iter().zip(zv).enumerate() {
            let p = a * b;
            if p != 0.0 {
                crate::linalg::axpy(p, self.w1.row(k), scratch);
            }
        }
        for s in scratch.iter_mut() {
            *s = leaky_relu(*s, self.leak);
        }
        dot(&self.w2, scratch) + self.b2
    }

    pub fn logit(&self, zu: &[f64], zv: &[f64]) -> f64 {
        let mut scratch = vec![0.0; self.hidden()];
        self.logit_with(zu, zv, &mut scratch)
    }

    pub fn predict(&self, zu: &[f64], zv: &[f64]) -> f64 {
        sigmoid(self.logit(zu, zv))
    }

    pub fn params_mut(&mut self) -> [&mut [f64]; 4] {
        [
            self.w1.as_mut_slice(),
            self.b1.as_mut_slice(),
            self.w2.as_mut_slice(),
            core::slice::from_mut(&mut self.b2),
        ]
    }

    pub fn params(&self) -> [&[f64]; 4] {
        [
            self.w1.as_slice(),
            self.b1.as_slice(),
            self.w2.as_slice(),
            core::slice::from_ref(&self.b2),
        ]
    }
}

pub fn predict_link(pred: &LinkPredictor, zu: &[f64], zv: &[f64]) -> f64 {
    pred.predict(zu, zv)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictorGrad {
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl PredictorGrad {
    pub fn zeros_like(p: &LinkPredictor) -> Self {
        PredictorGrad {
            w1: Matrix::zeros(p.dim(), p.hidden()),
            b1: vec![0.0; p.hidden()],
            w2: vec![0.0; p.hidden()],
            b2: 0.0,
        }
    }

    pub fn slices(&self) -> [&[f64]; 4] {
        [
            self.w1.as_slice(),
            self.b1.as_slice(),
            self.w2.as_slice(),
            core::slice::from_ref(&self.b2),
        ]
    }
}

/// Batched forward pass over `pairs` of rows of `z`.
pub(crate) struct PairBatch {
    products: Matrix,
    pre: Matrix,
    act: Matrix,
    pub logits: Vec<f64>,
}

impl LinkPredictor {
    pub(crate) fn forward_pairs(&self, z: &Matrix, pairs: &[(usize, usize)]) -> PairBatch {
        let d = self.dim();
        let mut products = Matrix::zeros(pairs.len(), d);
        for (r, &(u, v)) in pairs.iter().enumerate() {
            for ((o, &a), &b) in products.row_mut(r).iter_mut().zip(z.row(u)).zip(z.row(v)) {
                *o = a * b;
            }
        }
        let mut pre = products.matmul(&self.w1);
        pre.add_row_vector(&self.b1);
        let mut act = pre.clone();
        for x in act.as_mut_slice() {
            *x = leaky_relu(*x, self.leak);
        }
        let logits = (0..pairs.len())
            .map(|r| dot(act.row(r), &self.w2) + self.b2)
            .collect();
        PairBatch {
            products,
            pre,
            act,
            logits,
        }
    }

    /// Given `dlogits`, accumulates the predictor gradient and the gradient
    /// with respect to `z`.
    pub(crate) fn backward_pairs(
        &self,
        z: &Matrix,
        pairs: &[(usize, usize)],
        batch: &PairBatch,
        dlogits: &[f64],
        grad: &mut PredictorGrad,
        dz: &mut Matrix,
    ) {
        let h = self.hidden();
        let mut dpre = Matrix::zeros(pairs.len(), h);
        for (r, &g) in dlogits.iter().enumerate() {
            grad.b2 += g;
            crate::linalg::axpy(g, batch.act.row(r), &mut grad.w2);
            let row = dpre.row_mut(r);
            for ((o, &w), &p) in row.iter_mut().zip(&self.w2).zip(batch.pre.row(r)) {
                *o = g * w * if p > 0.0 { 1.0 } else { self.leak };
            }
        }
        grad.w1.add_assign(&batch.products.t_matmul(&dpre));
        for (b, s) in grad.b1.iter_mut().zip(dpre.column_sums()) {
            *b += s;
        }
        let dprod = dpre.matmul_t(&self.w1);
        for (r, &(u, v)) in pairs.iter().enumerate() {
            let dp = dprod.row(r);
            for k in 0..dp.len() {
                let zu = z[(u, k)];
                let zv = z[(v, k)];
                dz[(u, k)] += dp[k] * zv;
                dz[(v, k)] += dp[k] * zu;
            }
        }
    }
}

/// Link probabilities from a predictor applied to fixed embeddings.
#[derive(Debug, Clone, Copy)]
pub struct PredictorOracle<'a> {
    pub predictor: &'a LinkPredictor,
    pub embeddings: &'a Matrix,
}

impl LinkProbabilityOracle for PredictorOracle<'_> {
    fn prob(&self, i: usize, j: usize) -> f64 {
        // fixed argument order keeps the result bit-symmetric
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.predictor
            .predict(self.embeddings.row(a), self.embeddings.row(b))
    }
}

pub fn oracle_from<'a>(
    predictor: &'a LinkPredictor,
    embeddings: &'a Matrix,
) -> PredictorOracle<'a> {
    assert_eq!(
        embeddings.cols(),
        predictor.dim(),
        "embedding dimension mismatch"
    );
    PredictorOracle {
        predictor,
        embeddings,
    }
}
