use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::deadline;
use crate::domain::Direction;
use crate::error::Result;

const DEADLINE_POLL_MASK: u64 = (1 << 14) - 1;

/// Instrumentation collected by every engine.
///
/// "Generated" counts every successor record constructed, including nodes that
/// are screened, trimmed, pruned by a table hit, or produced while probing.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_generated: u64,
    /// Nodes whose successors were generated.
    pub nodes_expanded: u64,
    /// Nodes taken off OPEN per direction, including a terminating selection.
    pub selections: [u64; 2],
    /// Per-direction histogram: key value at selection -> number of selections.
    pub f_histogram: [BTreeMap<Cost, u64>; 2],
    /// `(nodes generated so far, cost)` when the first complete path was found.
    pub first_solution: Option<(u64, Cost)>,
    /// Nodes generated when the final (optimal) cost was first reached.
    pub optimal_found_at: Option<u64>,
    /// Every improvement of the best known cost, as `(generated, cost)`.
    pub improvements: Vec<(u64, Cost)>,
    pub wall_time: Duration,
    pub direction_assignment: Option<Direction>,
    pub threshold_sequence: Vec<Cost>,
    /// Nodes generated during each depth-first iteration.
    pub iteration_generated: Vec<u64>,
    /// Peak number of stored nodes (tree nodes, table entries, perimeter).
    pub memory_peak: u64,
    pub nipped: u64,
    pub pruned: u64,
    pub screened: u64,
    pub trimmed: u64,
    pub probe_generated: u64,
    pub probe_expanded: u64,
    /// Generations spent before the main search (perimeter construction,
    /// first phase of the sequential engines).
    pub setup_generated: u64,
    pub tt_hits: u64,
    pub mindiff: Option<Cost>,
    pub fmin2: Option<Cost>,
}

impl SearchStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts one generated node, enforcing the thread's node cap and polling
    /// its deadline now and then.
    #[inline]
    pub fn generate(&mut self) -> Result<()> {
        deadline::count_generation()?;
        self.nodes_generated += 1;
        if self.nodes_generated & DEADLINE_POLL_MASK == 0 {
            deadline::check()?;
        }
        Ok(())
    }

    #[inline]
    pub fn select(&mut self, direction: Direction, key: Cost) {
        self.selections[direction.index()] += 1;
        *self.f_histogram[direction.index()].entry(key).or_insert(0) += 1;
    }

    pub fn total_selections(&self) -> u64 {
        self.selections[0] + self.selections[1]
    }

    /// Records a complete path of `cost`; only strict improvements count.
    pub fn record_candidate(&mut self, cost: Cost, best: Cost) {
        if cost >= best {
            return;
        }
        if self.first_solution.is_none() {
            self.first_solution = Some((self.nodes_generated, cost));
        }
        self.optimal_found_at = Some(self.nodes_generated);
        self.improvements.push((self.nodes_generated, cost));
    }

    pub fn note_memory(&mut self, stored: usize) {
        self.memory_peak = self.memory_peak.max(stored as u64);
    }

    /// Folds the counters of a sub-search (probe, phase) into `self`.
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes_generated += other.nodes_generated;
        self.nodes_expanded += other.nodes_expanded;
        for d in 0..2 {
            self.selections[d] += other.selections[d];
            for (k, v) in &other.f_histogram[d] {
                *self.f_histogram[d].entry(*k).or_insert(0) += v;
            }
        }
        self.memory_peak = self.memory_peak.max(other.memory_peak);
        self.nipped += other.nipped;
        self.pruned += other.pruned;
        self.screened += other.screened;
        self.trimmed += other.trimmed;
        self.tt_hits += other.tt_hits;
    }
}
