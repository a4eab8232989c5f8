//! Stored search structures that a second search can meet.

use std::hash::Hash;

use crate::cost::Cost;
use crate::tree::{NodeStatus, SearchTree};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RegionHit {
    /// Known cost from the state to the region's root.
    pub cost: Cost,
    /// `cost` is optimal and the region covers every continuation through
    /// the state, so a search may stop there.
    pub settled: bool,
}

/// A stored set of states with known continuations to a root (`t` or `s`).
pub trait Region<S> {
    fn probe(&self, state: &S) -> Option<RegionHit>;

    /// States from `state` to the region's root, both inclusive.
    fn continuation(&self, state: &S) -> Vec<S>;
}

impl<S: Clone + Eq + Hash> Region<S> for SearchTree<S> {
    fn probe(&self, state: &S) -> Option<RegionHit> {
        let node = self.get(state)?;
        match node.status {
            NodeStatus::Closed => Some(RegionHit { cost: node.g, settled: true }),
            NodeStatus::Open => Some(RegionHit { cost: node.g, settled: false }),
            NodeStatus::Removed => None,
        }
    }

    fn continuation(&self, state: &S) -> Vec<S> {
        let mut path = self.lookup(state).map(|id| self.path_from_root(id)).unwrap_or_default();
        path.reverse();
        path
    }
}

/// Whether a lookup in a stored structure can possibly succeed: every stored
/// state has `g <= max_stored_g`, and an admissible `h` toward the structure's
/// root never exceeds that `g`.
#[inline]
pub fn frontier_reach_gate(h_toward_frontier: Cost, max_frontier_g: Cost) -> bool {
    h_toward_frontier <= max_frontier_g
}
