use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use super::{GanConfig, GanError};
use crate::linalg::Matrix;
use crate::nn::{Adam, Mlp, MlpGrad};
use crate::rng::{derive_seed, seeded, Rng};

/// Maps standard-normal latent vectors to embeddings (plus a one-hot label
/// block when `label_classes > 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub mlp: Mlp,
    pub label_classes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Critic {
    pub mlp: Mlp,
}

impl Generator {
    pub fn init(config: &GanConfig, output: usize, label_classes: usize, rng: &mut Rng) -> Self {
        let mut sizes = vec![config.latent_dim];
        sizes.extend_from_slice(&config.generator_hidden);
        sizes.push(output);
        Generator {
            mlp: Mlp::init(&sizes, rng),
            label_classes,
        }
    }

    pub fn latent_dim(&self) -> usize {
        self.mlp.input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.mlp.output_dim()
    }

    /// Width of the embedding part of the output.
    pub fn embedding_dim(&self) -> usize {
        self.output_dim() - self.label_classes
    }
}

impl Critic {
    pub fn init(config: &GanConfig, input: usize, rng: &mut Rng) -> Self {
        let mut sizes = vec![input];
        sizes.extend_from_slice(&config.critic_hidden);
        sizes.push(1);
        Critic {
            mlp: Mlp::init(&sizes, rng),
        }
    }
}

pub fn latent_batch(rows: usize, dim: usize, rng: &mut Rng) -> Matrix {
    Matrix::from_vec(
        rows,
        dim,
        (0..rows * dim)
            .map(|_| StandardNormal.sample(rng))
            .collect(),
    )
}

/// Row-wise `t * real + (1 - t) * fake`.
pub fn interpolate(real: &Matrix, fake: &Matrix, t: &[f64]) -> Matrix {
    let mut out = Matrix::zeros(real.rows(), real.cols());
    for (i, &ti) in t.iter().enumerate().take(real.rows()) {
        for ((o, &r), &f) in out.row_mut(i).iter_mut().zip(real.row(i)).zip(fake.row(i)) {
            *o = ti * r + (1.0 - ti) * f;
        }
    }
    out
}

fn mean(x: &Matrix) -> f64 {
    crate::sum::mean(x.as_slice())
}

/// Critic objective `mean D(fake) - mean D(real) + λ mean (|∇D(x̂)| - 1)²`
/// with `x̂` the interpolates at `t`. Returns (loss, penalty, gradient).
pub fn critic_loss_and_grad(
    critic: &Critic,
    real: &Matrix,
    fake: &Matrix,
    t: &[f64],
    penalty_weight: f64,
) -> (f64, f64, MlpGrad) {
    let b = real.rows() as f64;
    let mut grad = critic.mlp.zero_grad();
    let fake_cache = critic.mlp.forward_cached(fake);
    let real_cache = critic.mlp.forward_cached(real);
    let d_fake = Matrix::from_vec(fake.rows(), 1, vec![1.0 / b; fake.rows()]);
    let d_real = Matrix::from_vec(real.rows(), 1, vec![-1.0 / b; real.rows()]);
    critic.mlp.backward(&fake_cache, &d_fake, &mut grad);
    critic.mlp.backward(&real_cache, &d_real, &mut grad);
    let mixed = interpolate(real, fake, t);
    let norms = critic
        .mlp
        .gradient_penalty_backward(&mixed, penalty_weight / b, &mut grad);
    let penalty: Vec<f64> = norms.iter().map(|n| (n - 1.0) * (n - 1.0)).collect();
    let penalty = crate::sum::mean(&penalty);
    let loss = mean(fake_cache.output()) - mean(real_cache.output()) + penalty_weight * penalty;
    (loss, penalty, grad)
}

/// Critic objective alone, for checks.
pub fn critic_loss(
    critic: &Critic,
    real: &Matrix,
    fake: &Matrix,
    t: &[f64],
    penalty_weight: f64,
) -> f64 {
    critic_loss_and_grad(critic, real, fake, t, penalty_weight).0
}

/// Generator objective `-mean D(G(z))` and its gradient.
pub fn generator_loss_and_grad(
    generator: &Generator,
    critic: &Critic,
    z: &Matrix,
) -> (f64, MlpGrad) {
    let b = z.rows() as f64;
    let gen_cache = generator.mlp.forward_cached(z);
    let crit_cache = critic.mlp.forward_cached(gen_cache.output());
    let loss = -mean(crit_cache.output());
    let d_out = Matrix::from_vec(z.rows(), 1, vec![-1.0 / b; z.rows()]);
    let mut scratch = critic.mlp.zero_grad();
    let d_fake = critic.mlp.backward(&crit_cache, &d_out, &mut scratch);
    let mut grad = generator.mlp.zero_grad();
    generator.mlp.backward(&gen_cache, &d_fake, &mut grad);
    (loss, grad)
}

pub fn generator_loss(generator: &Generator, critic: &Critic, z: &Matrix) -> f64 {
    -mean(&critic.mlp.forward(&generator.mlp.forward(z)))
}

/// One generator step as reported to a training observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GanStep {
    pub step: usize,
    /// Critic loss of the last critic update before this generator step.
    pub critic_loss: f64,
    pub penalty: f64,
    pub generator_loss: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedGan {
    pub generator: Generator,
    pub critic: Critic,
}

/// Appends a one-hot block for `labels` with `classes` columns.
pub fn with_one_hot(data: &Matrix, labels: &[usize], classes: usize) -> Matrix {
    let mut hot = Matrix::zeros(data.rows(), classes);
    for (i, &l) in labels.iter().enumerate() {
        hot[(i, l)] = 1.0;
    }
    data.hconcat(&hot)
}

/// WGAN-GP on the rows of `data`.
///
/// With `labels`, each row is extended by its one-hot class vector and the
/// generator learns the joint distribution. `observer` sees every generator
/// step together with the current generator.
pub fn train_gan<F: FnMut(&GanStep, &Generator)>(
    data: &Matrix,
    labels: Option<&[usize]>,
    config: &GanConfig,
    seed: u64,
    mut observer: F,
) -> Result<TrainedGan, GanError> {
    config.validate()?;
    if data.rows() == 0 {
        return Err(GanError::Empty);
    }
    let (data, classes) = match labels {
        Some(l) => {
            if l.len() != data.rows() {
                return Err(GanError::LabelCount {
                    labels: l.len(),
                    rows: data.rows(),
                });
            }
            let classes = l.iter().copied().max().map_or(0, |m| m + 1);
            (with_one_hot(data, l, classes), classes)
        }
        None => (data.clone(), 0),
    };
    let mut init_rng = seeded(derive_seed(seed, 0));
    let mut generator = Generator::init(config, data.cols(), classes, &mut init_rng);
    let mut critic = Critic::init(config, data.cols(), &mut init_rng);
    let mut rng = seeded(derive_seed(seed, 1));
    let mut gen_opt = Adam::for_params(config.adam, &generator.mlp.params());
    let mut crit_opt = Adam::for_params(config.adam, &critic.mlp.params());
    let mut last_good = generator.clone();
    let batch = config.batch_size;

    for step in 0..config.generator_steps {
        let mut critic_loss = f64::NAN;
        let mut penalty = f64::NAN;
        for _ in 0..config.critic_steps {
            let idx: Vec<usize> = (0..batch)
                .map(|_| rng.random_range(0..data.rows()))
                .collect();
            let real = data.select_rows(&idx);
            let fake = generator
                .mlp
                .forward(&latent_batch(batch, config.latent_dim, &mut rng));
            let t: Vec<f64> = (0..batch).map(|_| rng.random::<f64>()).collect();
            let (loss, pen, grad) =
                critic_loss_and_grad(&critic, &real, &fake, &t, config.penalty_weight);
            critic_loss = loss;
            penalty = pen;
            crit_opt.step(critic.mlp.params_mut(), &grad.slices());
        }
        let z = latent_batch(batch, config.latent_dim, &mut rng);
        let (generator_loss, grad) = generator_loss_and_grad(&generator, &critic, &z);
        gen_opt.step(generator.mlp.params_mut(), &grad.slices());
        if !(critic_loss.is_finite() && generator_loss.is_finite() && generator.mlp.is_finite()) {
            return Err(GanError::Diverged {
                step,
                last_good: Box::new(last_good),
            });
        }
        last_good.clone_from(&generator);
        observer(
            &GanStep {
                step,
                critic_loss,
                penalty,
                generator_loss,
            },
            &generator,
        );
    }
    Ok(TrainedGan { generator, critic })
}

/// Sampled embeddings, with decoded labels for a label-conditioned
/// generator.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSample {
    pub embeddings: Matrix,
    pub labels: Option<Vec<usize>>,
}

pub fn sample_embeddings(generator: &Generator, count: usize, seed: u64) -> EmbeddingSample {
    let mut rng = seeded(seed);
    let out = generator
        .mlp
        .forward(&latent_batch(count, generator.latent_dim(), &mut rng));
    if generator.label_classes == 0 {
        return EmbeddingSample {
            embeddings: out,
            labels: None,
        };
    }
    let d = generator.embedding_dim();
    let labels = (0..count)
        .map(|i| {
            let block = &out.row(i)[d..];
            let mut best = 0;
            for (k, &v) in block.iter().enumerate() {
                if v > block[best] {
                    best = k;
                }
            }
            best
        })
        .collect();
    EmbeddingSample {
        embeddings: out.columns(0, d),
        labels: Some(labels),
    }
}
