use alloc::string::String;
use alloc::vec::Vec;

use super::counts::{square_count, triangle_count, wedge_count};
use super::degree::{
    claw_clustering_coefficient, gini_coefficient, powerlaw_exponent,
    relative_edge_distribution_entropy,
};
use super::local::{
    degree_distribution, local_clustering_distribution, local_square_clustering_distribution,
};
use super::mmd::mmd;
use super::paths::{characteristic_path_length, lcc_size};
use super::{MetricError, MetricFlag, MetricValue};
use crate::graph::Graph;

pub const CLUSTERING_COEFFICIENT: &str = "clustering_coefficient";
pub const CHARACTERISTIC_PATH_LENGTH: &str = "characteristic_path_length";
pub const TRIANGLE_COUNT: &str = "triangle_count";
pub const SQUARE_COUNT: &str = "square_count";
pub const LCC: &str = "lcc";
pub const POWERLAW_EXPONENT: &str = "powerlaw_exponent";
pub const WEDGE_COUNT: &str = "wedge_count";
pub const REL_EDGE_DISTR_ENTROPY: &str = "rel_edge_distr_entropy";
pub const GINI_COEFFICIENT: &str = "gini_coefficient";
pub const LOCAL_CLUSTERING_MMD: &str = "local_clustering_mmd";
pub const DEGREE_DISTRIBUTION_MMD: &str = "degree_distribution_mmd";
pub const LOCAL_SQUARE_CLUSTERING_MMD: &str = "local_square_clustering_mmd";

pub const GLOBAL_METRICS: [&str; 9] = [
    CLUSTERING_COEFFICIENT,
    CHARACTERISTIC_PATH_LENGTH,
    TRIANGLE_COUNT,
    SQUARE_COUNT,
    LCC,
    POWERLAW_EXPONENT,
    WEDGE_COUNT,
    REL_EDGE_DISTR_ENTROPY,
    GINI_COEFFICIENT,
];

pub const DISTRIBUTION_METRICS: [&str; 3] = [
    LOCAL_CLUSTERING_MMD,
    DEGREE_DISTRIBUTION_MMD,
    LOCAL_SQUARE_CLUSTERING_MMD,
];

#[derive(Debug, Clone, PartialEq)]
pub struct MetricEntry {
    pub name: &'static str,
    pub value: MetricValue,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportMetadata {
    pub graph_id: String,
    pub reference_id: Option<String>,
    pub seed: Option<u64>,
}

/// Nine global properties of a graph, plus the three distribution MMDs
/// against a reference graph when one is given.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub entries: Vec<MetricEntry>,
    pub metadata: ReportMetadata,
}

impl PropertyReport {
    pub fn get(&self, name: &str) -> Option<MetricValue> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).map(|v| v.value)
    }

    pub fn has_reference(&self) -> bool {
        self.entries.len() == GLOBAL_METRICS.len() + DISTRIBUTION_METRICS.len()
    }
}

fn from_result(r: Result<f64, MetricError>) -> MetricValue {
    match r {
        Ok(v) => MetricValue::ok(v),
        Err(e) => MetricValue::flagged(f64::NAN, MetricFlag::from(e)),
    }
}

pub fn global_metrics(g: &Graph) -> Vec<MetricEntry> {
    let entry = |name, value| MetricEntry { name, value };
    alloc::vec![
        entry(CLUSTERING_COEFFICIENT, claw_clustering_coefficient(g)),
        entry(
            CHARACTERISTIC_PATH_LENGTH,
            MetricValue::ok(characteristic_path_length(g))
        ),
        entry(TRIANGLE_COUNT, MetricValue::ok(triangle_count(g) as f64)),
        entry(SQUARE_COUNT, MetricValue::ok(square_count(g) as f64)),
        entry(LCC, MetricValue::ok(lcc_size(g) as f64)),
        entry(POWERLAW_EXPONENT, powerlaw_exponent(g)),
        entry(WEDGE_COUNT, MetricValue::ok(wedge_count(g) as f64)),
        entry(
            REL_EDGE_DISTR_ENTROPY,
            from_result(relative_edge_distribution_entropy(g))
        ),
        entry(GINI_COEFFICIENT, from_result(gini_coefficient(g))),
    ]
}

/// MMDs of local clustering, degree and local square clustering
/// distributions between `g` and `reference`.
pub fn distribution_metrics(g: &Graph, reference: &Graph) -> Vec<MetricEntry> {
    let pairs = [
        (
            LOCAL_CLUSTERING_MMD,
            local_clustering_distribution(g),
            local_clustering_distribution(reference),
        ),
        (
            DEGREE_DISTRIBUTION_MMD,
            degree_distribution(g),
            degree_distribution(reference),
        ),
        (
            LOCAL_SQUARE_CLUSTERING_MMD,
            local_square_clustering_distribution(g),
            local_square_clustering_distribution(reference),
        ),
    ];
    pairs
        .into_iter()
        .map(|(name, a, b)| MetricEntry {
            name,
            value: from_result(mmd(&a, &b)),
        })
        .collect()
}

pub fn property_report(
    g: &Graph,
    reference: Option<&Graph>,
    metadata: ReportMetadata,
) -> PropertyReport {
    let mut entries = global_metrics(g);
    if let Some(r) = reference {
        entries.extend(distribution_metrics(g, r));
    }
    PropertyReport { entries, metadata }
}
