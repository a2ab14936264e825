//! Tab-separated tables keyed by node: embeddings, features, labels,
//! degree sequences and node correspondences.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use doppelganger_core::graph::NodeCorrespondence;
use doppelganger_core::linalg::Matrix;

use super::edgelist::{split_fields, strip_comment};
use crate::error::{CliError, Result};

/// Non-comment lines as (line number, fields).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let content = strip_comment(line);
        (!content.is_empty()).then(|| (k + 1, split_fields(content).collect()))
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn number<T: std::str::FromStr>(path: &Path, line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| CliError::parse(path, line, format!("bad number `{s}`")))
}

/// Rows keyed by an arbitrary label, all of one width.
pub fn parse_keyed_rows(text: &str, path: &Path) -> Result<Vec<(String, Vec<f64>)>> {
    let mut out: Vec<(String, Vec<f64>)> = Vec::new();
    for (line, fields) in records(text) {
        let values = fields[1..]
            .iter()
            .map(|s| number(path, line, s))
            .collect::<Result<Vec<f64>>>()?;
        if let Some((_, first)) = out.first() {
            if first.len() != values.len() {
                return Err(CliError::parse(
                    path,
                    line,
                    format!("row has {} values, expected {}", values.len(), first.len()),
                ));
            }
        }
        out.push((fields[0].to_string(), values));
    }
    Ok(out)
}

/// Matrix whose rows are keyed `0..n`, in any order.
pub fn parse_matrix(text: &str, path: &Path) -> Result<Matrix> {
    let rows = parse_keyed_rows(text, path)?;
    let n = rows.len();
    let cols = rows.first().map_or(0, |r| r.1.len());
    let mut slots: Vec<Option<Vec<f64>>> = vec![None; n];
    for (key, values) in rows {
        let i: usize = key.parse().ok().filter(|&i| i < n).ok_or_else(|| {
            CliError::parse(path, 0, format!("row key `{key}` is not an id below {n}"))
        })?;
        if slots[i].replace(values).is_some() {
            return Err(CliError::parse(path, 0, format!("row {i} appears twice")));
        }
    }
    let data: Vec<f64> = slots.into_iter().flatten().flatten().collect();
    Ok(Matrix::from_vec(n, cols, data))
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    parse_matrix(&read(path)?, path)
}

pub fn read_keyed_rows(path: &Path) -> Result<Vec<(String, Vec<f64>)>> {
    parse_keyed_rows(&read(path)?, path)
}

pub fn format_matrix(m: &Matrix, seed: Option<u64>) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 20);
    let _ = writeln!(out, "# rows: {}", m.rows());
    let _ = writeln!(out, "# cols: {}", m.cols());
    if let Some(s) = seed {
        let _ = writeln!(out, "# seed: {s}");
    }
    for i in 0..m.rows() {
        let _ = write!(out, "{i}");
        for v in m.row(i) {
            let _ = write!(out, "\t{v:?}");
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix(path: &Path, m: &Matrix, seed: Option<u64>) -> Result<()> {
    super::write_file(path, format_matrix(m, seed).as_bytes())
}

/// `key<TAB>value` pairs with string values.
pub fn parse_pairs(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    records(text)
        .map(|(line, f)| {
            if f.len() < 2 {
                Err(CliError::parse(path, line, "expected two fields"))
            } else {
                Ok((f[0].to_string(), f[1].to_string()))
            }
        })
        .collect()
}

pub fn read_pairs(path: &Path) -> Result<Vec<(String, String)>> {
    parse_pairs(&read(path)?, path)
}

/// Class ids per node `0..n` from a `node<TAB>class` file of our own
/// making.
pub fn read_labels(path: &Path) -> Result<Vec<usize>> {
    let pairs = read_pairs(path)?;
    let mut out = vec![usize::MAX; pairs.len()];
    for (k, (node, class)) in pairs.iter().enumerate() {
        let i: usize = number(path, k + 1, node)?;
        if i >= out.len() {
            return Err(CliError::parse(
                path,
                k + 1,
                format!("node {i} out of range"),
            ));
        }
        out[i] = number(path, k + 1, class)?;
    }
    if out.contains(&usize::MAX) {
        return Err(CliError::parse(path, 0, "labels must cover nodes 0..n"));
    }
    Ok(out)
}

pub fn write_labels(path: &Path, labels: &[usize], seed: Option<u64>) -> Result<()> {
    let mut out = String::new();
    if let Some(s) = seed {
        let _ = writeln!(out, "# seed: {s}");
    }
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "{i}\t{l}");
    }
    super::write_file(path, out.as_bytes())
}

/// Degree sequence: integers separated by whitespace, commas or newlines.
pub fn parse_degrees(text: &str, path: &Path) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, fields) in records(text) {
        for f in fields {
            out.push(number(path, line, f)?);
        }
    }
    Ok(out)
}

pub fn read_degrees(path: &Path) -> Result<Vec<usize>> {
    parse_degrees(&read(path)?, path)
}

/// Degree targets and correspondence: `new<TAB>target<TAB>original`.
pub fn format_assignment(targets: &[usize], correspondence: &NodeCorrespondence) -> String {
    let mut out = String::from("# new\ttarget\toriginal\n");
    for (i, t) in targets.iter().enumerate() {
        let _ = writeln!(out, "{i}\t{t}\t{}", correspondence.original(i));
    }
    out
}

pub fn read_assignment(path: &Path) -> Result<(Vec<usize>, NodeCorrespondence)> {
    let text = read(path)?;
    let rows: Vec<(usize, Vec<&str>)> = records(&text).collect();
    let n = rows.len();
    let mut targets = vec![0; n];
    let mut mapping = vec![usize::MAX; n];
    for (line, f) in rows {
        if f.len() != 3 {
            return Err(CliError::parse(
                path,
                line,
                "expected new, target, original",
            ));
        }
        let i: usize = number(path, line, f[0])?;
        if i >= n {
            return Err(CliError::parse(
                path,
                line,
                format!("node {i} out of range"),
            ));
        }
        targets[i] = number(path, line, f[1])?;
        mapping[i] = number(path, line, f[2])?;
    }
    let corr =
        NodeCorrespondence::new(mapping).map_err(|e| CliError::parse(path, 0, e.to_string()))?;
    Ok((targets, corr))
}

/// Correspondence file: `new<TAB>original`, or the assignment format.
pub fn read_correspondence(path: &Path) -> Result<NodeCorrespondence> {
    let text = read(path)?;
    let mut mapping: Vec<(usize, usize)> = Vec::new();
    for (line, f) in records(&text) {
        let orig = match f.len() {
            2 => f[1],
            3 => f[2],
            _ => return Err(CliError::parse(path, line, "expected new and original ids")),
        };
        mapping.push((number(path, line, f[0])?, number(path, line, orig)?));
    }
    let mut out = vec![usize::MAX; mapping.len()];
    for (new, orig) in mapping {
        if new < out.len() {
            out[new] = orig;
        }
    }
    NodeCorrespondence::new(out).map_err(|e| CliError::parse(path, 0, e.to_string()))
}

/// Numbers string labels in order of first appearance.
pub fn compact_labels<'a>(labels: impl IntoIterator<Item = &'a str>) -> (Vec<usize>, Vec<String>) {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut names = Vec::new();
    let out = labels
        .into_iter()
        .map(|l| {
            *ids.entry(l).or_insert_with(|| {
                names.push(l.to_string());
                names.len() - 1
            })
        })
        .collect();
    (out, names)
}
