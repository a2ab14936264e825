//! Wasserstein GAN with gradient penalty over node embeddings.
//!
//! Generator `16 -> 32 -> 64 -> 100 -> d` and critic `d -> 100 -> 64 -> 32 -> 1`,
//! rectifiers on hidden layers, linear outputs. The critic takes
//! `critic_steps` updates per generator update; the penalty pushes the
//! critic's input-gradient norm towards one on random interpolates of real
//! and generated rows.

mod diagnostics;
mod train;

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub use diagnostics::{
    distance_ks, embedding_mmd, embedding_mmd_with_bandwidth, empirical_cdf, ks_distance,
    pairwise_distance_cdf, pairwise_distances, DistanceCdf,
};
pub use train::{
    critic_loss, critic_loss_and_grad, generator_loss, generator_loss_and_grad, interpolate,
    latent_batch, sample_embeddings, train_gan, with_one_hot, Critic, EmbeddingSample, GanStep,
    Generator, TrainedGan,
};

use crate::nn::AdamConfig;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GanError {
    #[error("loss became non-finite at generator step {step}")]
    Diverged {
        step: usize,
        last_good: Box<Generator>,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no rows to train on")]
    Empty,
    #[error("{labels} labels for {rows} rows")]
    LabelCount { labels: usize, rows: usize },
    #[error("invalid GAN config: {0}")]
    InvalidConfig(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct GanConfig {
    pub latent_dim: usize,
    pub generator_hidden: Vec<usize>,
    pub critic_hidden: Vec<usize>,
    pub penalty_weight: f64,
    pub critic_steps: usize,
    pub batch_size: usize,
    pub generator_steps: usize,
    pub adam: AdamConfig,
}

impl Default for GanConfig {
    fn default() -> Self {
        GanConfig {
            latent_dim: 16,
            generator_hidden: vec![32, 64, 100],
            critic_hidden: vec![100, 64, 32],
            penalty_weight: 10.0,
            critic_steps: 5,
            batch_size: 64,
            generator_steps: 10_000,
            adam: AdamConfig {
                learning_rate: 1e-4,
                beta1: 0.5,
                beta2: 0.9,
                epsilon: 1e-8,
            },
        }
    }
}

impl GanConfig {
    pub fn validate(&self) -> Result<(), GanError> {
        if self.latent_dim == 0 {
            return Err(GanError::InvalidConfig("latent_dim must be positive"));
        }
        if self.generator_hidden.contains(&0) || self.critic_hidden.contains(&0) {
            return Err(GanError::InvalidConfig("hidden widths must be positive"));
        }
        if self.critic_steps == 0 || self.batch_size == 0 {
            return Err(GanError::InvalidConfig(
                "critic_steps and batch_size must be positive",
            ));
        }
        if !(self.penalty_weight >= 0.0 && self.penalty_weight.is_finite()) {
            return Err(GanError::InvalidConfig(
                "penalty_weight must be finite and non-negative",
            ));
        }
        Ok(())
    }
}
