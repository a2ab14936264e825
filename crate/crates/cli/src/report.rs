//! Property reports as flat JSON and as aligned text tables with one row
//! per graph.

use doppelganger_core::graph::Graph;
use doppelganger_core::metrics::report::{DISTRIBUTION_METRICS, GLOBAL_METRICS};
use doppelganger_core::metrics::{
    global_clustering_coefficient, property_report, PropertyReport, ReportMetadata,
};
use serde_json::{Map, Value};

pub const EDGE_OVERLAP: &str = "edge_overlap";
/// `3 * triangles / wedges`, reported next to the claw-normalized
/// clustering coefficient.
pub const TRANSITIVITY: &str = "transitivity";

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// Flat key-value document: identifiers, then every metric in report
/// order, then `extra`. Non-finite values become `null` and flagged
/// metrics get a `<name>_flag` entry.
pub fn report_json(report: &PropertyReport, extra: &[(&str, f64)]) -> Value {
    let mut m = Map::new();
    let meta = &report.metadata;
    m.insert("graph".into(), meta.graph_id.clone().into());
    if let Some(r) = &meta.reference_id {
        m.insert("reference".into(), r.clone().into());
    }
    if let Some(s) = meta.seed {
        m.insert("seed".into(), s.into());
    }
    for e in &report.entries {
        m.insert(e.name.into(), number(e.value.value));
        if let Some(flag) = e.value.flag {
            m.insert(format!("{}_flag", e.name), flag.as_str().into());
        }
    }
    for (k, v) in extra {
        m.insert((*k).into(), number(*v));
    }
    Value::Object(m)
}

/// Property report of `g` as a flat document, with transitivity added.
pub fn graph_report(
    g: &Graph,
    reference: Option<&Graph>,
    meta: ReportMetadata,
    extra: &[(&str, f64)],
) -> Value {
    let mut doc = report_json(&property_report(g, reference, meta), extra);
    let t = global_clustering_coefficient(g);
    let m = doc.as_object_mut().expect("report is an object");
    m.insert(TRANSITIVITY.into(), number(t.value));
    if let Some(flag) = t.flag {
        m.insert(format!("{TRANSITIVITY}_flag"), flag.as_str().into());
    }
    doc
}

/// Values of `names` in a flat report document, `NaN` where absent.
pub fn values_of(doc: &Value, names: &[&str]) -> Vec<f64> {
    names
        .iter()
        .map(|n| doc.get(*n).and_then(Value::as_f64).unwrap_or(f64::NAN))
        .collect()
}

/// Column order used in tables and aggregates.
pub fn columns(with_reference: bool, with_overlap: bool) -> Vec<&'static str> {
    let mut out = Vec::new();
    if with_overlap {
        out.push(EDGE_OVERLAP);
    }
    out.extend(GLOBAL_METRICS);
    if with_reference {
        out.extend(DISTRIBUTION_METRICS);
    }
    out
}

fn short_name(name: &str) -> &str {
    match name {
        EDGE_OVERLAP => "EO",
        "clustering_coefficient" => "clust",
        "characteristic_path_length" => "path_len",
        "triangle_count" => "triangles",
        "square_count" => "squares",
        "lcc" => "LCC",
        "powerlaw_exponent" => "powerlaw",
        "wedge_count" => "wedges",
        "rel_edge_distr_entropy" => "entropy",
        "gini_coefficient" => "gini",
        "local_clustering_mmd" => "local_clust",
        "degree_distribution_mmd" => "degree_distr",
        "local_square_clustering_mmd" => "local_sq_clust",
        other => other,
    }
}

pub fn format_value(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "-".into()
        } else {
            format!("{v}")
        };
    }
    let a = v.abs();
    if v == v.trunc() && a < 1e9 {
        format!("{v:.0}")
    } else if (1e-3..1e6).contains(&a) {
        format!("{v:.4}")
    } else {
        format!("{v:.3e}")
    }
}

/// Mean and sample standard deviation of each column over trials,
/// ignoring non-finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub names: Vec<String>,
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Aggregate {
    pub fn new(names: &[&str], trials: &[Vec<f64>]) -> Self {
        let k = names.len();
        let mut mean = vec![f64::NAN; k];
        let mut sd = vec![f64::NAN; k];
        let mut counts = vec![0; k];
        for c in 0..k {
            let xs: Vec<f64> = trials
                .iter()
                .map(|t| t[c])
                .filter(|v| v.is_finite())
                .collect();
            counts[c] = xs.len();
            if xs.is_empty() {
                continue;
            }
            let m = xs.iter().sum::<f64>() / xs.len() as f64;
            mean[c] = m;
            sd[c] = if xs.len() > 1 {
                (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
            } else {
                0.0
            };
        }
        Aggregate {
            names: names.iter().map(|s| s.to_string()).collect(),
            mean,
            sd,
            counts,
        }
    }

    pub fn get(&self, name: &str) -> Option<(f64, f64)> {
        let i = self.names.iter().position(|n| n == name)?;
        Some((self.mean[i], self.sd[i]))
    }

    pub fn to_json(&self, trials: usize) -> Value {
        let mut m = Map::new();
        m.insert("trials".into(), trials.into());
        for (i, n) in self.names.iter().enumerate() {
            let mut cell = Map::new();
            cell.insert("mean".into(), number(self.mean[i]));
            cell.insert("sd".into(), number(self.sd[i]));
            cell.insert("count".into(), self.counts[i].into());
            m.insert(n.clone(), Value::Object(cell));
        }
        Value::Object(m)
    }

    pub fn cells(&self) -> Vec<String> {
        self.mean
            .iter()
            .zip(&self.sd)
            .map(|(&m, &s)| format!("{}({})", format_value(m), format_value(s)))
            .collect()
    }
}

/// Aligned table: a header of short metric names, then one row per graph.
pub fn format_table(names: &[&str], rows: &[(String, Vec<String>)]) -> String {
    let mut header = vec![String::new()];
    header.extend(names.iter().map(|n| short_name(n).to_string()));
    let mut all = vec![header];
    for (label, cells) in rows {
        let mut r = vec![label.clone()];
        r.extend(cells.iter().cloned());
        all.push(r);
    }
    let width = all.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| {
            all.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in &all {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if c == 0 {
                    format!("{s:<w$}", w = widths[c])
                } else {
                    format!("{s:>w$}", w = widths[c])
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn value_cells(values: &[f64]) -> Vec<String> {
    values.iter().map(|&v| format_value(v)).collect()
}

/// Distance used to rank generated graphs against their source: relative
/// error summed over the nine global metrics plus the three MMDs.
pub fn report_distance(generated: &Value, original: &Value) -> f64 {
    let g = values_of(generated, &GLOBAL_METRICS);
    let o = values_of(original, &GLOBAL_METRICS);
    let mut d: f64 = g
        .iter()
        .zip(&o)
        .filter(|(a, b)| a.is_finite() && b.is_finite())
        .map(|(a, b)| (a - b).abs() / b.abs().max(1e-12))
        .sum();
    d += values_of(generated, &DISTRIBUTION_METRICS)
        .into_iter()
        .filter(|v| v.is_finite())
        .sum::<f64>();
    d
}
