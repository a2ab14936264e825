use alloc::vec;
use alloc::vec::Vec;

use super::buckets::RemainingDegreeBuckets;
use super::trace::RealizationTrace;
use super::RealizationError;
use crate::graph::Graph;

/// Classic Havel–Hakimi. Node `i` is given degree `targets[i]`; on success
/// the realized graph has exactly these degrees.
pub fn havel_hakimi(targets: &[usize]) -> Result<Graph, RealizationError> {
    havel_hakimi_traced(targets, false).map(|(g, _)| g)
}

pub fn havel_hakimi_traced(
    targets: &[usize],
    trace: bool,
) -> Result<(Graph, Option<RealizationTrace>), RealizationError> {
    let n = targets.len();
    let mut remaining = targets.to_vec();
    let mut buckets = RemainingDegreeBuckets::new(&remaining);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut marked = vec![false; n];
    let mut record = trace.then(|| RealizationTrace::new(n));

    while let Some(hub) = buckets.max() {
        let need = remaining[hub];
        buckets.remove(hub, need);
        for &u in &adjacency[hub] {
            marked[u] = true;
        }
        let chosen: Vec<usize> = buckets
            .iter_desc()
            .filter(|&t| !marked[t])
            .take(need)
            .collect();
        for &u in &adjacency[hub] {
            marked[u] = false;
        }
        if chosen.len() < need {
            let unmet = remaining.iter().sum::<usize>();
            return Err(RealizationError::NotGraphic {
                stuck_node: hub,
                unmet,
            });
        }
        for &t in &chosen {
            buckets.decrement(t, remaining[t]);
            remaining[t] -= 1;
            adjacency[hub].push(t);
            adjacency[t].push(hub);
        }
        remaining[hub] = 0;
        if let Some(r) = record.as_mut() {
            r.record(hub, chosen, &remaining);
        }
    }
    Ok((Graph::from_adjacency_unchecked(adjacency), record))
}
