//! Pipeline configuration, read from JSON. Every field has a default, so
//! `{}` is a valid config.

use std::path::{Path, PathBuf};

use doppelganger_core::embedding::{CyclingSchedule, EmbeddingConfig};
use doppelganger_core::gan::GanConfig;
use doppelganger_core::rng::derive_seed;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StageSeeds {
    pub embedding: Option<u64>,
    pub gan: Option<u64>,
    pub sample: Option<u64>,
    pub evaluation: Option<u64>,
}

/// Seeds actually used by each stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedSeeds {
    pub root: u64,
    pub embedding: u64,
    pub gan: u64,
    pub sample: u64,
    pub evaluation: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RealizationOptions {
    /// Write a per-hub trace of the improved realization.
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvaluationOptions {
    /// Non-edges scored for link AUC/AP; `None` scores all of them.
    pub negatives: Option<usize>,
    /// GAN steps between MMD evaluations in the training log.
    pub diagnostics_every: usize,
    /// Rows drawn from real and generated embeddings for GAN diagnostics.
    pub diagnostics_rows: usize,
    pub cdf_bins: usize,
}

impl Default for EvaluationOptions {
    fn default() -> Self {
        EvaluationOptions {
            negatives: None,
            diagnostics_every: 500,
            diagnostics_rows: 500,
            cdf_bins: 100,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub graph: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub workdir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub seeds: StageSeeds,
    /// Replace the training lengths with the short smoke preset.
    pub smoke: bool,
    pub embedding: EmbeddingConfig,
    pub gan: GanConfig,
    pub realization: RealizationOptions,
    pub evaluation: EvaluationOptions,
}

/// Training lengths of the smoke preset.
pub fn smoke_schedule() -> CyclingSchedule {
    CyclingSchedule {
        cycles: 1,
        rounds: 3,
        first_round_epochs: 100,
        round_epochs: 50,
        negatives_per_round: 2000,
    }
}

pub const SMOKE_GAN_STEPS: usize = 300;

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Embedding settings with the smoke preset applied.
    pub fn effective_embedding(&self) -> EmbeddingConfig {
        let mut e = self.embedding;
        if self.smoke {
            e.schedule = smoke_schedule();
        }
        e
    }

    pub fn effective_gan(&self) -> GanConfig {
        let mut g = self.gan.clone();
        if self.smoke {
            g.generator_steps = SMOKE_GAN_STEPS;
        }
        g
    }

    pub fn seeds(&self) -> ResolvedSeeds {
        let root = self.seed.unwrap_or(0);
        ResolvedSeeds {
            root,
            embedding: self.seeds.embedding.unwrap_or(derive_seed(root, 1)),
            gan: self.seeds.gan.unwrap_or(derive_seed(root, 2)),
            sample: self.seeds.sample.unwrap_or(derive_seed(root, 3)),
            evaluation: self.seeds.evaluation.unwrap_or(derive_seed(root, 4)),
        }
    }

    /// Checks settings and that every referenced input exists.
    pub fn validate(&self) -> Result<()> {
        for p in [&self.graph, &self.features, &self.labels]
            .into_iter()
            .flatten()
        {
            if !p.is_file() {
                return Err(CliError::Config(format!(
                    "input {} does not exist",
                    p.display()
                )));
            }
        }
        self.effective_embedding()
            .schedule
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let e = &self.embedding;
        if e.hidden_dim == 0 || e.embedding_dim == 0 || e.predictor_hidden == 0 {
            return Err(CliError::Config("embedding widths must be positive".into()));
        }
        self.effective_gan()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let ev = &self.evaluation;
        if ev.diagnostics_every == 0 || ev.diagnostics_rows < 2 || ev.cdf_bins == 0 {
            return Err(CliError::Config(
                "diagnostics_every and cdf_bins must be positive, diagnostics_rows at least 2"
                    .into(),
            ));
        }
        Ok(())
    }
}
