//! Whitespace- or comma-separated edge lists.
//!
//! Foreign files may use arbitrary node labels; they are numbered in order
//! of first appearance. Files written here start with a `# nodes: N`
//! header, and when that header is present the endpoints are read as the
//! ids `0..N` directly, so isolated nodes survive a round trip.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use doppelganger_core::graph::{DropTally, Graph};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    /// Original label of each node id.
    pub labels: Vec<String>,
    pub graph: Graph,
    pub dropped: DropTally,
}

pub(crate) fn split_fields(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
}

/// Content of a line with any `#` comment removed.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.trim().strip_prefix('#')?.trim();
    let rest = rest.strip_prefix(key)?.trim_start();
    Some(rest.strip_prefix(':')?.trim())
}

pub fn parse_edge_list(text: &str, path: &Path) -> Result<EdgeList> {
    let mut declared: Option<usize> = None;
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen_data = false;
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        if !seen_data {
            if let Some(v) = header_value(line, "nodes") {
                let n = v
                    .parse()
                    .map_err(|_| CliError::parse(path, lineno, format!("bad node count `{v}`")))?;
                declared = Some(n);
                continue;
            }
        }
        let content = strip_comment(line);
        if content.is_empty() {
            continue;
        }
        seen_data = true;
        let mut fields = split_fields(content);
        let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
            return Err(CliError::parse(path, lineno, "expected two endpoints"));
        };
        let pair = match declared {
            Some(n) => {
                let id = |s: &str| -> Result<usize> {
                    match s.parse::<usize>() {
                        Ok(v) if v < n => Ok(v),
                        _ => Err(CliError::parse(
                            path,
                            lineno,
                            format!("node `{s}` is not an id below {n}"),
                        )),
                    }
                };
                (id(a)?, id(b)?)
            }
            None => {
                let mut id = |s: &str| {
                    *ids.entry(s.to_string()).or_insert_with(|| {
                        labels.push(s.to_string());
                        labels.len() - 1
                    })
                };
                (id(a), id(b))
            }
        };
        edges.push(pair);
    }
    let n = match declared {
        Some(n) => {
            labels = (0..n).map(|i| i.to_string()).collect();
            n
        }
        None => labels.len(),
    };
    let (graph, dropped) =
        Graph::from_edges(n, edges).map_err(|e| CliError::parse(path, 0, e.to_string()))?;
    Ok(EdgeList {
        labels,
        graph,
        dropped,
    })
}

pub fn read_edge_list(path: &Path) -> Result<EdgeList> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_edge_list(&text, path)
}

/// Canonical form: header, then one `u<TAB>v` line per edge with `u < v`
/// in lexicographic order.
pub fn format_edge_list(g: &Graph, seed: Option<u64>) -> String {
    let mut out = String::with_capacity(16 * g.edge_count() + 64);
    let _ = writeln!(out, "# nodes: {}", g.node_count());
    let _ = writeln!(out, "# edges: {}", g.edge_count());
    if let Some(s) = seed {
        let _ = writeln!(out, "# seed: {s}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u}\t{v}");
    }
    out
}

pub fn write_edge_list(path: &Path, g: &Graph, seed: Option<u64>) -> Result<()> {
    super::write_file(path, format_edge_list(g, seed).as_bytes())
}
