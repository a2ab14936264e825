//! Node embeddings and a link predictor learned from one graph.
//!
//! The encoder is a two-layer mean-aggregation network over full neighbor
//! lists (hidden width 128, rectifier in between, linear 128-dimensional
//! output). Without node features each node gets a one-hot identity row.
//! The predictor scores a pair by an MLP head on the elementwise product of
//! the two embeddings. Both are trained jointly on binary cross-entropy with
//! the cycling negative-sampling schedule described on [`CyclingSchedule`].

mod encoder;
mod eval;
mod predictor;
mod sampler;
mod train;

use thiserror::Error;

pub use encoder::{
    mean_neighbors, mean_neighbors_t, Encoder, EncoderGrad, NodeFeatures, SageLayer, SageLayerGrad,
};
pub use eval::{average_precision, evaluate_oracle, evaluate_predictor, roc_auc, LinkScores};
pub use predictor::{oracle_from, predict_link, LinkPredictor, PredictorGrad, PredictorOracle};
pub use sampler::NegativeSampler;
pub use train::{train, EpochRecord, LinkModel, LinkModelGrad, TrainedEmbedding};

use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::nn::AdamConfig;
use crate::realization::{initial_graph_from_oracle, RealizationError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbeddingError {
    #[error("loss became non-finite in cycle {cycle}, round {round}, epoch {epoch}")]
    Diverged {
        cycle: usize,
        round: usize,
        epoch: usize,
    },
    #[error("feature matrix has {features} rows but the graph has {nodes} nodes")]
    FeatureRows { features: usize, nodes: usize },
    #[error("graph has no edges to learn from")]
    NoEdges,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(&'static str),
}

/// `cycles` warm-started cycles of `rounds` rounds. Round one trains
/// `first_round_epochs` on a balanced set; each later round adds
/// `negatives_per_round` unseen negatives and trains `round_epochs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct CyclingSchedule {
    pub cycles: usize,
    pub rounds: usize,
    pub first_round_epochs: usize,
    pub round_epochs: usize,
    pub negatives_per_round: usize,
}

impl Default for CyclingSchedule {
    fn default() -> Self {
        CyclingSchedule {
            cycles: 1,
            rounds: 20,
            first_round_epochs: 5000,
            round_epochs: 5000,
            negatives_per_round: 2000,
        }
    }
}

impl CyclingSchedule {
    pub fn validate(&self) -> Result<(), EmbeddingError> {
        let fields = [
            (self.cycles, "cycles must be positive"),
            (self.rounds, "rounds must be positive"),
            (
                self.first_round_epochs,
                "first_round_epochs must be positive",
            ),
            (self.round_epochs, "round_epochs must be positive"),
            (
                self.negatives_per_round,
                "negatives_per_round must be positive",
            ),
        ];
        for (v, msg) in fields {
            if v == 0 {
                return Err(EmbeddingError::InvalidSchedule(msg));
            }
        }
        Ok(())
    }

    pub fn total_epochs(&self) -> usize {
        self.cycles * (self.first_round_epochs + (self.rounds - 1) * self.round_epochs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct EmbeddingConfig {
    pub hidden_dim: usize,
    pub embedding_dim: usize,
    pub predictor_hidden: usize,
    pub leak: f64,
    pub adam: AdamConfig,
    pub schedule: CyclingSchedule,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig {
            hidden_dim: 128,
            embedding_dim: 128,
            predictor_hidden: 64,
            leak: 0.01,
            adam: AdamConfig::default(),
            schedule: CyclingSchedule::default(),
        }
    }
}

/// Initial graph on the sampled nodes: the `target_edges` pairs the
/// predictor likes best.
pub fn initial_graph_from_predictor(
    embeddings: &Matrix,
    predictor: &LinkPredictor,
    target_edges: usize,
) -> Result<Graph, RealizationError> {
    initial_graph_from_oracle(
        embeddings.rows(),
        &oracle_from(predictor, embeddings),
        target_edges,
    )
}
