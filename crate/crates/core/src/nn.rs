//! Fully connected layers, multilayer perceptrons with hand-written
//! backpropagation, and the Adam optimizer.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Uniform};

use crate::linalg::Matrix;

#[inline]
pub fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

#[inline]
pub fn leaky_relu(x: f64, leak: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        leak * x
    }
}

#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + libm::exp(-x))
    } else {
        let e = libm::exp(x);
        e / (1.0 + e)
    }
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + libm::log1p(libm::exp(-x))
    } else {
        libm::log1p(libm::exp(x))
    }
}

/// Affine map `x W + b` on row vectors; `weight` is `in x out`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub weight: Matrix,
    pub bias: Vec<f64>,
}

impl Dense {
    pub fn zeros(input: usize, output: usize) -> Self {
        Dense {
            weight: Matrix::zeros(input, output),
            bias: vec![0.0; output],
        }
    }

    /// Uniform in `±1/sqrt(input)` for weights and biases.
    pub fn init<R: Rng + ?Sized>(input: usize, output: usize, rng: &mut R) -> Self {
        let bound = 1.0 / libm::sqrt(input.max(1) as f64);
        let dist = Uniform::new_inclusive(-bound, bound).expect("finite bound");
        let weight = Matrix::from_vec(
            input,
            output,
            (0..input * output).map(|_| dist.sample(rng)).collect(),
        );
        let bias = (0..output).map(|_| dist.sample(rng)).collect();
        Dense { weight, bias }
    }

    pub fn input_dim(&self) -> usize {
        self.weight.rows()
    }

    pub fn output_dim(&self) -> usize {
        self.weight.cols()
    }

    pub fn forward(&self, x: &Matrix) -> Matrix {
        let mut out = x.matmul(&self.weight);
        out.add_row_vector(&self.bias);
        out
    }

    pub fn param_count(&self) -> usize {
        self.weight.rows() * self.weight.cols() + self.bias.len()
    }
}

/// Gradient of a [`Dense`] layer.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseGrad {
    pub weight: Matrix,
    pub bias: Vec<f64>,
}

impl DenseGrad {
    pub fn zeros_like(layer: &Dense) -> Self {
        DenseGrad {
            weight: Matrix::zeros(layer.weight.rows(), layer.weight.cols()),
            bias: vec![0.0; layer.bias.len()],
        }
    }
}

/// Multilayer perceptron: rectifier on hidden layers, linear output.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    pub layers: Vec<Dense>,
}

/// Activations kept from a forward pass.
#[derive(Debug, Clone)]
pub struct MlpCache {
    /// `inputs[l]` is the input of layer `l`; the last entry is the output.
    pub inputs: Vec<Matrix>,
    /// Pre-activations of each layer.
    pub pre: Vec<Matrix>,
}

impl MlpCache {
    pub fn output(&self) -> &Matrix {
        self.inputs.last().expect("non-empty cache")
    }
}

impl Mlp {
    /// Layer widths `sizes[0] -> sizes[1] -> ... -> sizes[last]`.
    pub fn init<R: Rng + ?Sized>(sizes: &[usize], rng: &mut R) -> Self {
        assert!(sizes.len() >= 2);
        Mlp {
            layers: sizes
                .windows(2)
                .map(|w| Dense::init(w[0], w[1], rng))
                .collect(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![self.layers[0].input_dim()];
        s.extend(self.layers.iter().map(Dense::output_dim));
        s
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().output_dim()
    }

    pub fn forward_cached(&self, x: &Matrix) -> MlpCache {
        let last = self.layers.len() - 1;
        let mut inputs = vec![x.clone()];
        let mut pre = Vec::with_capacity(self.layers.len());
        for (l, layer) in self.layers.iter().enumerate() {
            let z = layer.forward(inputs.last().unwrap());
            let mut a = z.clone();
            if l < last {
                for v in a.as_mut_slice() {
                    *v = relu(*v);
                }
            }
            pre.push(z);
            inputs.push(a);
        }
        MlpCache { inputs, pre }
    }

    pub fn forward(&self, x: &Matrix) -> Matrix {
        self.forward_cached(x).inputs.pop().unwrap()
    }

    pub fn zero_grad(&self) -> MlpGrad {
        MlpGrad {
            layers: self.layers.iter().map(DenseGrad::zeros_like).collect(),
        }
    }

    /// Accumulates parameter gradients for upstream gradient `d_out` into
    /// `grad`, and returns the gradient with respect to the input.
    pub fn backward(&self, cache: &MlpCache, d_out: &Matrix, grad: &mut MlpGrad) -> Matrix {
        let last = self.layers.len() - 1;
        let mut delta = d_out.clone();
        for l in (0..self.layers.len()).rev() {
            if l < last {
                for (d, &z) in delta.as_mut_slice().iter_mut().zip(cache.pre[l].as_slice()) {
                    if z <= 0.0 {
                        *d = 0.0;
                    }
                }
            }
            let g = &mut grad.layers[l];
            g.weight.add_assign(&cache.inputs[l].t_matmul(&delta));
            for (b, s) in g.bias.iter_mut().zip(delta.column_sums()) {
                *b += s;
            }
            delta = delta.matmul_t(&self.layers[l].weight);
        }
        delta
    }

    /// For a scalar-output network: accumulates into `grad` the parameter
    /// gradient of `scale * (|∇_x f(x_i)| - 1)^2` summed over rows `x_i`,
    /// and returns the per-row input-gradient norms.
    ///
    /// Within a fixed rectifier activation pattern the input gradient is a
    /// product of weight matrices, so the penalty is differentiated through
    /// that product; biases only move the pattern and get no gradient.
    pub fn gradient_penalty_backward(
        &self,
        x: &Matrix,
        scale: f64,
        grad: &mut MlpGrad,
    ) -> Vec<f64> {
        assert_eq!(
            self.output_dim(),
            1,
            "gradient penalty needs a scalar output"
        );
        let cache = self.forward_cached(x);
        let layers = self.layers.len();
        let mut norms = Vec::with_capacity(x.rows());
        for row in 0..x.rows() {
            let mask = |l: usize, j: usize| cache.pre[l][(row, j)] > 0.0;
            // deltas[l] = d f / d pre[l]
            let mut deltas: Vec<Vec<f64>> = vec![Vec::new(); layers];
            deltas[layers - 1] = vec![1.0];
            for l in (1..layers).rev() {
                let w = &self.layers[l].weight;
                let mut d = vec![0.0; w.rows()];
                for (i, di) in d.iter_mut().enumerate() {
                    if mask(l - 1, i) {
                        *di = crate::linalg::dot(w.row(i), &deltas[l]);
                    }
                }
                deltas[l - 1] = d;
            }
            let w0 = &self.layers[0].weight;
            let input_grad: Vec<f64> = (0..w0.rows())
                .map(|i| crate::linalg::dot(w0.row(i), &deltas[0]))
                .collect();
            let norm = libm::sqrt(input_grad.iter().map(|g| g * g).sum());
            norms.push(norm);
            if norm == 0.0 {
                continue;
            }
            // u = d penalty / d (gradient entering layer l from above)
            let coef = scale * 2.0 * (norm - 1.0) / norm;
            let mut u: Vec<f64> = input_grad.iter().map(|g| coef * g).collect();
            #[allow(clippy::needless_range_loop)]
            for l in 0..layers {
                let w = &self.layers[l].weight;
                let gw = &mut grad.layers[l].weight;
                for (i, &ui) in u.iter().enumerate() {
                    if ui != 0.0 {
                        crate::linalg::axpy(ui, &deltas[l], gw.row_mut(i));
                    }
                }
                if l + 1 == layers {
                    break;
                }
                // v_j = sum_i W[i, j] u_i, then through the mask of layer l
                let mut v = vec![0.0; w.cols()];
                for (i, &ui) in u.iter().enumerate() {
                    if ui != 0.0 {
                        crate::linalg::axpy(ui, w.row(i), &mut v);
                    }
                }
                for (j, vj) in v.iter_mut().enumerate() {
                    if !mask(l, j) {
                        *vj = 0.0;
                    }
                }
                u = v;
            }
        }
        norms
    }

    pub fn params_mut(&mut self) -> Vec<&mut [f64]> {
        let mut out = Vec::with_capacity(2 * self.layers.len());
        for layer in &mut self.layers {
            out.push(layer.weight.as_mut_slice());
            out.push(layer.bias.as_mut_slice());
        }
        out
    }

    pub fn params(&self) -> Vec<&[f64]> {
        let mut out = Vec::with_capacity(2 * self.layers.len());
        for layer in &self.layers {
            out.push(layer.weight.as_slice());
            out.push(layer.bias.as_slice());
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.params()
            .iter()
            .all(|p| p.iter().all(|x| x.is_finite()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlpGrad {
    pub layers: Vec<DenseGrad>,
}

impl MlpGrad {
    pub fn slices(&self) -> Vec<&[f64]> {
        let mut out = Vec::with_capacity(2 * self.layers.len());
        for layer in &self.layers {
            out.push(layer.weight.as_slice());
            out.push(layer.bias.as_slice());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Adam state for a fixed list of parameter tensors.
#[derive(Debug, Clone)]
pub struct Adam {
    pub config: AdamConfig,
    step: u64,
    first: Vec<Vec<f64>>,
    second: Vec<Vec<f64>>,
}

impl Adam {
    pub fn new(config: AdamConfig, sizes: &[usize]) -> Self {
        Adam {
            config,
            step: 0,
            first: sizes.iter().map(|&n| vec![0.0; n]).collect(),
            second: sizes.iter().map(|&n| vec![0.0; n]).collect(),
        }
    }

    pub fn for_params(config: AdamConfig, params: &[&[f64]]) -> Self {
        let sizes: Vec<usize> = params.iter().map(|p| p.len()).collect();
        Adam::new(config, &sizes)
    }

    pub fn step(&mut self, params: Vec<&mut [f64]>, grads: &[&[f64]]) {
        assert_eq!(params.len(), self.first.len());
        assert_eq!(grads.len(), self.first.len());
        self.step += 1;
        let AdamConfig {
            learning_rate,
            beta1,
            beta2,
            epsilon,
        } = self.config;
        let bias1 = 1.0 - libm::pow(beta1, self.step as f64);
        let bias2 = 1.0 - libm::pow(beta2, self.step as f64);
        for (((p, g), m), v) in params
            .into_iter()
            .zip(grads)
            .zip(&mut self.first)
            .zip(&mut self.second)
        {
            for i in 0..p.len() {
                m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
                v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
                let m_hat = m[i] / bias1;
                let v_hat = v[i] / bias2;
                p[i] -= learning_rate * m_hat / (libm::sqrt(v_hat) + epsilon);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn stable_scalar_functions() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert!((sigmoid(1.0) - 0.731_058_578_630_004_9).abs() < 1e-15);
        assert!(sigmoid(-800.0) >= 0.0 && sigmoid(800.0) <= 1.0);
        assert!((softplus(0.0) - core::f64::consts::LN_2).abs() < 1e-15);
        assert!(softplus(1000.0).is_finite());
        assert_eq!(leaky_relu(-2.0, 0.01), -0.02);
    }

    fn mlp_loss(mlp: &Mlp, x: &Matrix, target: &Matrix) -> f64 {
        let y = mlp.forward(x);
        y.as_slice()
            .iter()
            .zip(target.as_slice())
            .map(|(a, b)| 0.5 * (a - b) * (a - b))
            .sum()
    }

    #[test]
    fn mlp_backward_matches_finite_differences() {
        let mut rng = seeded(3);
        let mlp = Mlp::init(&[3, 5, 4, 2], &mut rng);
        let x = Matrix::from_vec(4, 3, (0..12).map(|i| (i as f64 * 0.37).sin()).collect());
        let target = Matrix::from_vec(4, 2, (0..8).map(|i| (i as f64 * 0.11).cos()).collect());
        let cache = mlp.forward_cached(&x);
        let mut d_out = cache.output().clone();
        for (d, t) in d_out.as_mut_slice().iter_mut().zip(target.as_slice()) {
            *d -= t;
        }
        let mut grad = mlp.zero_grad();
        mlp.backward(&cache, &d_out, &mut grad);
        let h = 1e-6;
        let analytic: Vec<Vec<f64>> = grad.slices().iter().map(|s| s.to_vec()).collect();
        for (t, a) in analytic.iter().enumerate() {
            for (i, &ai) in a.iter().enumerate() {
                let mut plus = mlp.clone();
                plus.params_mut()[t][i] += h;
                let mut minus = mlp.clone();
                minus.params_mut()[t][i] -= h;
                let fd = (mlp_loss(&plus, &x, &target) - mlp_loss(&minus, &x, &target)) / (2.0 * h);
                assert!(
                    (fd - ai).abs() <= 1e-6 * (1.0 + fd.abs()),
                    "tensor {t} index {i}: {fd} vs {ai}"
                );
            }
        }
    }

    #[test]
    fn adam_minimizes_a_quadratic() {
        let mut x = vec![3.0, -2.0];
        let mut opt = Adam::new(
            AdamConfig {
                learning_rate: 0.1,
                ..AdamConfig::default()
            },
            &[2],
        );
        for _ in 0..500 {
            let g = vec![2.0 * x[0], 2.0 * x[1]];
            opt.step(vec![x.as_mut_slice()], &[g.as_slice()]);
        }
        assert!(x[0].abs() < 1e-2 && x[1].abs() < 1e-2, "{x:?}");
    }
}
