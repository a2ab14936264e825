use alloc::vec::Vec;

use super::encoder::{Encoder, EncoderGrad, NodeFeatures};
use super::predictor::{LinkPredictor, PredictorGrad};
use super::sampler::NegativeSampler;
use super::{CyclingSchedule, EmbeddingConfig, EmbeddingError};
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::nn::{sigmoid, softplus, Adam};
use crate::rng::{derive_seed, seeded};

/// Encoder and predictor trained together.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkModel {
    pub encoder: Encoder,
    pub predictor: LinkPredictor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkModelGrad {
    pub encoder: EncoderGrad,
    pub predictor: PredictorGrad,
}

impl LinkModelGrad {
    pub fn slices(&self) -> Vec<&[f64]> {
        let mut v: Vec<&[f64]> = self.encoder.slices().into();
        v.extend(self.predictor.slices());
        v
    }
}

impl LinkModel {
    pub fn init(input_dim: usize, config: &EmbeddingConfig, seed: u64) -> Self {
        let mut rng = seeded(seed);
        let encoder = Encoder::init(input_dim, config.hidden_dim, config.embedding_dim, &mut rng);
        let predictor = LinkPredictor::init(
            config.embedding_dim,
            config.predictor_hidden,
            config.leak,
            &mut rng,
        );
        LinkModel { encoder, predictor }
    }

    pub fn embed(&self, g: &Graph, x: &NodeFeatures) -> Matrix {
        self.encoder.forward(g, x)
    }

    pub fn params_mut(&mut self) -> Vec<&mut [f64]> {
        let mut v: Vec<&mut [f64]> = self.encoder.params_mut().into();
        v.extend(self.predictor.params_mut());
        v
    }

    pub fn params(&self) -> Vec<&[f64]> {
        let mut v: Vec<&[f64]> = self.encoder.params().into();
        v.extend(self.predictor.params());
        v
    }

    pub fn is_finite(&self) -> bool {
        self.params()
            .iter()
            .all(|p| p.iter().all(|x| x.is_finite()))
    }

    /// Mean binary cross-entropy of the predicted links on `pairs` with
    /// `labels` in {0, 1}, and its gradient.
    pub fn loss_and_grad(
        &self,
        g: &Graph,
        x: &NodeFeatures,
        pairs: &[(usize, usize)],
        labels: &[f64],
    ) -> (f64, LinkModelGrad) {
        assert_eq!(pairs.len(), labels.len());
        let (z, cache) = self.encoder.forward_cached(g, x);
        let batch = self.predictor.forward_pairs(&z, pairs);
        let scale = 1.0 / pairs.len().max(1) as f64;
        let mut losses = Vec::with_capacity(pairs.len());
        let mut dlogits = Vec::with_capacity(pairs.len());
        for (&l, &y) in batch.logits.iter().zip(labels) {
            losses.push(softplus(l) - y * l);
            dlogits.push((sigmoid(l) - y) * scale);
        }
        let loss = crate::sum::pairwise_sum(&losses) * scale;

        let mut grad = LinkModelGrad {
            encoder: self.encoder.zero_grad(),
            predictor: PredictorGrad::zeros_like(&self.predictor),
        };
        let mut dz = Matrix::zeros(z.rows(), z.cols());
        self.predictor
            .backward_pairs(&z, pairs, &batch, &dlogits, &mut grad.predictor, &mut dz);
        self.encoder.backward(g, x, &cache, &dz, &mut grad.encoder);
        (loss, grad)
    }

    pub fn loss(
        &self,
        g: &Graph,
        x: &NodeFeatures,
        pairs: &[(usize, usize)],
        labels: &[f64],
    ) -> f64 {
        let z = self.encoder.forward(g, x);
        let logits = self.predictor.forward_pairs(&z, pairs).logits;
        let losses: Vec<f64> = logits
            .iter()
            .zip(labels)
            .map(|(&l, &y)| softplus(l) - y * l)
            .collect();
        crate::sum::pairwise_sum(&losses) / pairs.len().max(1) as f64
    }
}

/// One full-batch epoch as seen by a training observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub cycle: usize,
    pub round: usize,
    pub epoch: usize,
    pub loss: f64,
    pub positives: usize,
    pub negatives: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedEmbedding {
    pub model: LinkModel,
    pub embeddings: Matrix,
    /// Loss of the last epoch.
    pub final_loss: f64,
}

/// Trains encoder and predictor with cycling negative sampling.
///
/// Each cycle starts from the current parameters with all edges as
/// positives and equally many fresh negatives, trains
/// `first_round_epochs`, then for every later round adds
/// `negatives_per_round` negatives not used before in the cycle and trains
/// `round_epochs`. The optimizer state carries over between cycles.
pub fn train<F: FnMut(&EpochRecord)>(
    g: &Graph,
    features: &NodeFeatures,
    config: &EmbeddingConfig,
    seed: u64,
    mut observer: F,
) -> Result<TrainedEmbedding, EmbeddingError> {
    config.schedule.validate()?;
    if features.node_count() != g.node_count() {
        return Err(EmbeddingError::FeatureRows {
            features: features.node_count(),
            nodes: g.node_count(),
        });
    }
    if g.edge_count() == 0 {
        return Err(EmbeddingError::NoEdges);
    }
    let mut model = LinkModel::init(features.dim(), config, derive_seed(seed, 0));
    let mut adam = Adam::for_params(config.adam, &model.params());
    let mut rng = seeded(derive_seed(seed, 1));
    let mut sampler = NegativeSampler::new();
    let positives: Vec<(usize, usize)> = g.edges().collect();
    let CyclingSchedule {
        cycles,
        rounds,
        first_round_epochs,
        round_epochs,
        negatives_per_round,
    } = config.schedule;

    let mut final_loss = f64::NAN;
    for cycle in 0..cycles {
        sampler.reset();
        let mut pairs = positives.clone();
        let mut labels = alloc::vec![1.0; positives.len()];
        let negatives = sampler.sample(g, positives.len(), &mut rng);
        labels.extend(core::iter::repeat_n(0.0, negatives.len()));
        pairs.extend(negatives);
        for round in 0..rounds {
            if round > 0 {
                let extra = sampler.sample(g, negatives_per_round, &mut rng);
                labels.extend(core::iter::repeat_n(0.0, extra.len()));
                pairs.extend(extra);
            }
            let epochs = if round == 0 {
                first_round_epochs
            } else {
                round_epochs
            };
            for epoch in 0..epochs {
                let (loss, grad) = model.loss_and_grad(g, features, &pairs, &labels);
                if !loss.is_finite() {
                    return Err(EmbeddingError::Diverged {
                        cycle,
                        round,
                        epoch,
                    });
                }
                adam.step(model.params_mut(), &grad.slices());
                final_loss = loss;
                observer(&EpochRecord {
                    cycle,
                    round,
                    epoch,
                    loss,
                    positives: positives.len(),
                    negatives: pairs.len() - positives.len(),
                });
            }
        }
    }
    if !model.is_finite() {
        return Err(EmbeddingError::Diverged {
            cycle: cycles,
            round: 0,
            epoch: 0,
        });
    }
    let embeddings = model.embed(g, features);
    Ok(TrainedEmbedding {
        model,
        embeddings,
        final_loss,
    })
}
