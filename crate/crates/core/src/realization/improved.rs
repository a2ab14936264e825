use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::buckets::RemainingDegreeBuckets;
use super::oracle::LinkProbabilityOracle;
use super::trace::RealizationTrace;
use super::{Realization, RealizationError};
use crate::graph::Graph;
use crate::graphic::is_graphic;

/// Havel–Hakimi with oracle-driven neighbor choice.
///
/// The hub is still the node with the largest remaining degree. Its
/// neighbors are the non-adjacent nodes with positive remaining degree that
/// the oracle scores highest; ties fall to larger remaining degree, then to
/// lower index, so a constant oracle reproduces [`super::havel_hakimi`].
///
/// A hub that runs out of candidates keeps its unmet stubs and is dropped.
/// Once that happens every node it could still reach is already adjacent to
/// it, so nothing is lost by not revisiting it.
pub fn improved_hh<O: LinkProbabilityOracle + ?Sized>(
    targets: &[usize],
    oracle: &O,
    trace: bool,
) -> Result<Realization, RealizationError> {
    if !is_graphic(targets) {
        return Err(RealizationError::NotGraphicSequence);
    }
    let n = targets.len();
    let mut remaining = targets.to_vec();
    let mut buckets = RemainingDegreeBuckets::new(&remaining);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut marked = vec![false; n];
    let mut skipped_hubs = Vec::new();
    let mut record = trace.then(|| RealizationTrace::new(n));
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(n);

    while let Some(hub) = buckets.max() {
        let need = remaining[hub];
        buckets.remove(hub, need);
        for &u in &adjacency[hub] {
            marked[u] = true;
        }
        candidates.clear();
        candidates.extend(
            buckets
                .iter_desc()
                .filter(|&t| !marked[t])
                .map(|t| (oracle.prob(hub, t), remaining[t], t)),
        );
        for &u in &adjacency[hub] {
            marked[u] = false;
        }

        let take = need.min(candidates.len());
        if take > 0 && take < candidates.len() {
            candidates.select_nth_unstable_by(take - 1, candidate_order);
        }
        candidates[..take].sort_unstable_by(candidate_order);
        let chosen: Vec<usize> = candidates[..take].iter().map(|c| c.2).collect();

        for &t in &chosen {
            buckets.decrement(t, remaining[t]);
            remaining[t] -= 1;
            adjacency[hub].push(t);
            adjacency[t].push(hub);
        }
        remaining[hub] = need - take;
        if take < need {
            skipped_hubs.push(hub);
        }
        if let Some(r) = record.as_mut() {
            r.record(hub, chosen, &remaining);
        }
    }

    Ok(Realization {
        graph: Graph::from_adjacency_unchecked(adjacency),
        stub_deficit: remaining.iter().sum(),
        skipped_hubs,
        trace: record,
    })
}

fn candidate_order(a: &(f64, usize, usize), b: &(f64, usize, usize)) -> Ordering {
    b.0.total_cmp(&a.0)
        .then_with(|| b.1.cmp(&a.1))
        .then_with(|| a.2.cmp(&b.2))
}
