use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::nn::{relu, Dense};

/// Input node features. `Identity(n)` stands for the `n x n` identity
/// matrix without materializing it.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeFeatures {
    Identity(usize),
    Dense(Matrix),
}

impl NodeFeatures {
    pub fn node_count(&self) -> usize {
        match self {
            NodeFeatures::Identity(n) => *n,
            NodeFeatures::Dense(m) => m.rows(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            NodeFeatures::Identity(n) => *n,
            NodeFeatures::Dense(m) => m.cols(),
        }
    }
}

/// Row `v` of the result is the mean of the rows of `x` at the neighbors of
/// `v`; isolated nodes get zeros.
pub fn mean_neighbors(g: &Graph, x: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(g.node_count(), x.cols());
    for v in 0..g.node_count() {
        let nb = g.neighbors(v);
        if nb.is_empty() {
            continue;
        }
        let w = 1.0 / nb.len() as f64;
        let row = out.row_mut(v);
        for &u in nb {
            crate::linalg::axpy(w, x.row(u), row);
        }
    }
    out
}

/// Transpose of [`mean_neighbors`]: scatters row `v` of `d` back onto the
/// neighbors of `v`.
pub fn mean_neighbors_t(g: &Graph, d: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(g.node_count(), d.cols());
    for v in 0..g.node_count() {
        let nb = g.neighbors(v);
        if nb.is_empty() {
            continue;
        }
        let w = 1.0 / nb.len() as f64;
        for &u in nb {
            crate::linalg::axpy(w, d.row(v), out.row_mut(u));
        }
    }
    out
}

/// Mean-aggregation layer: `x_v W_self + mean(x_u, u ~ v) W_neigh + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct SageLayer {
    pub w_self: Matrix,
    pub w_neigh: Matrix,
    pub bias: Vec<f64>,
}

impl SageLayer {
    pub fn init<R: Rng + ?Sized>(input: usize, output: usize, rng: &mut R) -> Self {
        let a = Dense::init(input, output, rng);
        let b = Dense::init(input, output, rng);
        SageLayer {
            w_self: a.weight,
            w_neigh: b.weight,
            bias: a.bias,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.w_self.rows()
    }

    pub fn output_dim(&self) -> usize {
        self.w_self.cols()
    }

    fn forward_identity(&self, g: &Graph) -> Matrix {
        let mut s = self.w_self.clone();
        s.add_assign(&mean_neighbors(g, &self.w_neigh));
        s.add_row_vector(&self.bias);
        s
    }

    fn forward_dense(&self, x: &Matrix, agg: &Matrix) -> Matrix {
        let mut s = x.matmul(&self.w_self);
        s.add_assign(&agg.matmul(&self.w_neigh));
        s.add_row_vector(&self.bias);
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SageLayerGrad {
    pub w_self: Matrix,
    pub w_neigh: Matrix,
    pub bias: Vec<f64>,
}

impl SageLayerGrad {
    fn zeros_like(l: &SageLayer) -> Self {
        SageLayerGrad {
            w_self: Matrix::zeros(l.w_self.rows(), l.w_self.cols()),
            w_neigh: Matrix::zeros(l.w_neigh.rows(), l.w_neigh.cols()),
            bias: vec![0.0; l.bias.len()],
        }
    }
}

/// Two mean-aggregation layers with a rectifier in between and a linear
/// output.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoder {
    pub first: SageLayer,
    pub second: SageLayer,
}

pub(crate) struct EncoderCache {
    agg_x: Option<Matrix>,
    pre1: Matrix,
    h1: Matrix,
    agg_h1: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncoderGrad {
    pub first: SageLayerGrad,
    pub second: SageLayerGrad,
}

impl Encoder {
    pub fn init<R: Rng + ?Sized>(input: usize, hidden: usize, output: usize, rng: &mut R) -> Self {
        Encoder {
            first: SageLayer::init(input, hidden, rng),
            second: SageLayer::init(hidden, output, rng),
        }
    }

    pub fn output_dim(&self) -> usize {
        self.second.output_dim()
    }

    pub fn forward(&self, g: &Graph, x: &NodeFeatures) -> Matrix {
        self.forward_cached(g, x).0
    }

    pub(crate) fn forward_cached(&self, g: &Graph, x: &NodeFeatures) -> (Matrix, EncoderCache) {
        assert_eq!(
            x.node_count(),
            g.node_count(),
            "feature rows must match nodes"
        );
        assert_eq!(x.dim(), self.first.input_dim(), "feature width mismatch");
        let (pre1, agg_x) = match x {
            NodeFeatures::Identity(_) => (self.first.forward_identity(g), None),
            NodeFeatures::Dense(m) => {
                let agg = mean_neighbors(g, m);
                (self.first.forward_dense(m, &agg), Some(agg))
            }
        };
        let mut h1 = pre1.clone();
        for v in h1.as_mut_slice() {
            *v = relu(*v);
        }
        let agg_h1 = mean_neighbors(g, &h1);
        let z = self.second.forward_dense(&h1, &agg_h1);
        (
            z,
            EncoderCache {
                agg_x,
                pre1,
                h1,
                agg_h1,
            },
        )
    }

    pub fn zero_grad(&self) -> EncoderGrad {
        EncoderGrad {
            first: SageLayerGrad::zeros_like(&self.first),
            second: SageLayerGrad::zeros_like(&self.second),
        }
    }

    /// Accumulates the parameter gradient for upstream gradient `dz` on the
    /// output embeddings.
    pub(crate) fn backward(
        &self,
        g: &Graph,
        x: &NodeFeatures,
        cache: &EncoderCache,
        dz: &Matrix,
        grad: &mut EncoderGrad,
    ) {
        let g2 = &mut grad.second;
        g2.w_self.add_assign(&cache.h1.t_matmul(dz));
        g2.w_neigh.add_assign(&cache.agg_h1.t_matmul(dz));
        for (b, s) in g2.bias.iter_mut().zip(dz.column_sums()) {
            *b += s;
        }
        let mut dh1 = dz.matmul_t(&self.second.w_self);
        dh1.add_assign(&mean_neighbors_t(g, &dz.matmul_t(&self.second.w_neigh)));
        for (d, &p) in dh1.as_mut_slice().iter_mut().zip(cache.pre1.as_slice()) {
            if p <= 0.0 {
                *d = 0.0;
            }
        }
        let g1 = &mut grad.first;
        match x {
            NodeFeatures::Identity(_) => {
                g1.w_self.add_assign(&dh1);
                g1.w_neigh.add_assign(&mean_neighbors_t(g, &dh1));
            }
            NodeFeatures::Dense(m) => {
                let agg = cache.agg_x.as_ref().expect("dense cache");
                g1.w_self.add_assign(&m.t_matmul(&dh1));
                g1.w_neigh.add_assign(&agg.t_matmul(&dh1));
            }
        }
        for (b, s) in g1.bias.iter_mut().zip(dh1.column_sums()) {
            *b += s;
        }
    }

    pub fn params_mut(&mut self) -> [&mut [f64]; 6] {
        [
            self.first.w_self.as_mut_slice(),
            self.first.w_neigh.as_mut_slice(),
            self.first.bias.as_mut_slice(),
            self.second.w_self.as_mut_slice(),
            self.second.w_neigh.as_mut_slice(),
            self.second.bias.as_mut_slice(),
        ]
    }

    pub fn params(&self) -> [&[f64]; 6] {
        [
            self.first.w_self.as_slice(),
            self.first.w_neigh.as_slice(),
            self.first.bias.as_slice(),
            self.second.w_self.as_slice(),
            self.second.w_neigh.as_slice(),
            self.second.bias.as_slice(),
        ]
    }
}

impl EncoderGrad {
    pub fn slices(&self) -> [&[f64]; 6] {
        [
            self.first.w_self.as_slice(),
            self.first.w_neigh.as_slice(),
            self.first.bias.as_slice(),
            self.second.w_self.as_slice(),
            self.second.w_neigh.as_slice(),
            self.second.bias.as_slice(),
        ]
    }
}
