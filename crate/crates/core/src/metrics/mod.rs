//! Graph property suite: nine global statistics, three per-node
//! distributions and the MMD used to compare distributions.
//!
//! All functions are pure in an immutable [`Graph`](crate::Graph) and
//! invariant under node relabeling.

pub mod counts;
pub mod degree;
pub mod local;
pub mod mmd;
pub mod paths;
pub mod report;

use thiserror::Error;

pub use counts::{claw_count, four_cycle_count, square_count, triangle_count, wedge_count};
pub use degree::{
    claw_clustering_coefficient, gini_coefficient, global_clustering_coefficient,
    powerlaw_exponent, relative_edge_distribution_entropy,
};
pub use local::{
    degree_distribution, local_clustering_distribution, local_square_clustering_distribution,
    NodeStatisticDistribution,
};
pub use mmd::mmd;
pub use paths::{characteristic_path_length, lcc_size};
pub use report::{property_report, MetricEntry, PropertyReport, ReportMetadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("graph has no edges")]
    Edgeless,
    #[error("distribution is empty")]
    EmptyDistribution,
}

/// Why a metric value is a placeholder rather than a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricFlag {
    NoWedges,
    NoClaws,
    Undefined,
    Edgeless,
    EmptyDistribution,
}

impl MetricFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MetricFlag::NoWedges => "no_wedges",
            MetricFlag::NoClaws => "no_claws",
            MetricFlag::Undefined => "undefined",
            MetricFlag::Edgeless => "edgeless",
            MetricFlag::EmptyDistribution => "empty_distribution",
        }
    }
}

impl From<MetricError> for MetricFlag {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::Edgeless => MetricFlag::Edgeless,
            MetricError::EmptyDistribution => MetricFlag::EmptyDistribution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub flag: Option<MetricFlag>,
}

impl MetricValue {
    pub fn ok(value: f64) -> Self {
        MetricValue { value, flag: None }
    }

    pub fn flagged(value: f64, flag: MetricFlag) -> Self {
        MetricValue {
            value,
            flag: Some(flag),
        }
    }
}
