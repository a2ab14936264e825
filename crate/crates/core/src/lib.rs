//! Degree-preserving "doppelganger" graph generation.
//!
//! Given one undirected graph, the pipeline learns node embeddings together
//! with a link predictor, learns the embedding distribution with a
//! Wasserstein GAN, samples a fresh node set, and realizes the original
//! degree sequence on those nodes with a link-probability guided variant of
//! Havel–Hakimi. The result matches the degree-based properties of the
//! input exactly while sharing almost none of its edges.
//!
//! This crate is `no_std` and only needs `alloc`. File formats, pipeline
//! orchestration and the command line live in the companion `doppelganger`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod baselines;
pub mod embedding;
pub mod gan;
pub mod graph;
pub mod graphic;
pub mod linalg;
pub mod metrics;
pub mod nn;
pub mod realization;
pub mod rng;
pub mod sum;

pub use graph::{DegreeSequence, Graph, GraphError, NodeCorrespondence};
pub use linalg::Matrix;
