//! Best-first search: plain A*, budgeted A*, and A* against a stored region.

use std::time::Instant;

use crate::cost::Cost;
use crate::domain::{Direction, Domain};
use crate::error::Result;
use crate::region::{frontier_reach_gate, Region};
use crate::solution::Solution;
use crate::stats::SearchStats;
use crate::tree::SearchTree;

pub enum AStarOutcome<S> {
    Solved(Solution<S>),
    /// The generation budget ran out; the tree is intact and its best open key
    /// is `fmin`.
    MemoryExhausted { tree: SearchTree<S>, fmin: Cost },
    NoSolution,
}

impl<S> AStarOutcome<S> {
    pub fn solution(&self) -> Option<&Solution<S>> {
        match self {
            AStarOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_solution(self) -> Option<Solution<S>> {
        match self {
            AStarOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }
}

/// A* from the root of `direction` toward its target, generating at most
/// `node_limit` nodes before handing back the partial tree.
pub fn astar<D: Domain>(
    domain: &D,
    direction: Direction,
    node_limit: Option<u64>,
) -> Result<(AStarOutcome<D::State>, SearchStats)> {
    let key = |g: Cost, s: &D::State| g + domain.heuristic(s, direction);
    BestFirst { direction, key: &key, region: None, node_limit }.run(domain)
}

/// Lookup of a stored region, optionally guarded by
/// [`frontier_reach_gate`] on the searching side's own heuristic.
pub struct RegionProbe<'a, S> {
    pub region: &'a dyn Region<S>,
    pub max_stored_g: Option<Cost>,
}

/// Configurable best-first engine shared by every A*-ordered phase.
///
/// With a region attached, any generated state found in it yields a
/// candidate `g + stored cost`; settled states are not inserted. The search
/// then stops once the best open key reaches the best candidate, which
/// requires a consistent key.
pub struct BestFirst<'a, S> {
    pub direction: Direction,
    /// Priority of a state reached with cost `g`.
    pub key: &'a dyn Fn(Cost, &S) -> Cost,
    pub region: Option<RegionProbe<'a, S>>,
    pub node_limit: Option<u64>,
}

impl<'a, S: Clone + Eq + std::hash::Hash + std::fmt::Debug> BestFirst<'a, S> {
    pub fn run<D: Domain<State = S>>(&self, domain: &D) -> Result<(AStarOutcome<S>, SearchStats)> {
        let started = Instant::now();
        let mut stats = SearchStats::new();
        stats.direction_assignment = Some(self.direction);
        let result = self.search(domain, &mut stats);
        stats.wall_time = started.elapsed();
        Ok((result?, stats))
    }

    fn probe(&self, domain: &impl Domain<State = S>, state: &S) -> Option<crate::region::RegionHit> {
        let probe = self.region.as_ref()?;
        if let Some(max_g) = probe.max_stored_g {
            if !frontier_reach_gate(domain.heuristic(state, self.direction), max_g) {
                return None;
            }
        }
        probe.region.probe(state)
    }

    fn search<D: Domain<State = S>>(&self, domain: &D, stats: &mut SearchStats) -> Result<AStarOutcome<S>> {
        let dir = self.direction;
        let root = domain.root(dir);
        let target = domain.target(dir);
        let mut tree = SearchTree::new(dir, root.clone(), (self.key)(Cost::ZERO, &root));
        let mut l_min = Cost::INFINITY;
        // (tree node the meeting state was generated from, meeting state)
        let mut best: Option<(Option<usize>, S)> = None;
        if let Some(hit) = self.probe(domain, &root) {
            stats.record_candidate(hit.cost, l_min);
            l_min = hit.cost;
            best = Some((None, root.clone()));
            if hit.settled {
                return Ok(self.finish_region(tree, best, l_min, stats));
            }
        }
        let mut buf = Vec::new();
        loop {
            let Some(top) = tree.peek() else {
                stats.note_memory(tree.stored());
                return Ok(if best.is_some() { self.finish_region(tree, best, l_min, stats) } else { AStarOutcome::NoSolution });
            };
            let top_key = tree.node(top).key;
            if self.region.is_some() && top_key >= l_min {
                return Ok(self.finish_region(tree, best, l_min, stats));
            }
            if self.region.is_none() && tree.node(top).state == target {
                tree.pop();
                stats.select(dir, top_key);
                stats.note_memory(tree.stored());
                let mut path = tree.path_from_root(top);
                if dir == Direction::Backward {
                    path.reverse();
                }
                let cost = tree.node(top).g;
                stats.record_candidate(cost, Cost::INFINITY);
                let mut sol = Solution::new(path, cost);
                sol.improvements = stats.improvements.clone();
                return Ok(AStarOutcome::Solved(sol));
            }
            if self.node_limit.is_some_and(|limit| stats.nodes_generated >= limit) {
                stats.note_memory(tree.stored());
                let fmin = tree.fmin();
                return Ok(AStarOutcome::MemoryExhausted { tree, fmin });
            }
            tree.pop();
            stats.select(dir, top_key);
            stats.nodes_expanded += 1;
            let g = tree.node(top).g;
            let state = tree.node(top).state.clone();
            domain.neighbors(&state, dir, &mut buf);
            for (child, k) in buf.drain(..) {
                stats.generate()?;
                let g_child = g + k;
                if let Some(hit) = self.probe(domain, &child) {
                    let cand = g_child + hit.cost;
                    if cand < l_min {
                        stats.record_candidate(cand, l_min);
                        l_min = cand;
                        best = Some((Some(top), child.clone()));
                    }
                    if hit.settled {
                        continue;
                    }
                }
                let key = (self.key)(g_child, &child);
                tree.insert_or_improve(child, g_child, key, top);
            }
        }
    }

    fn finish_region(
        &self,
        tree: SearchTree<S>,
        best: Option<(Option<usize>, S)>,
        l_min: Cost,
        stats: &mut SearchStats,
    ) -> AStarOutcome<S> {
        stats.note_memory(tree.stored());
        let Some((from, meeting)) = best else { return AStarOutcome::NoSolution };
        let region = &self.region.as_ref().expect("region search").region;
        let mut path = from.map(|id| tree.path_from_root(id)).unwrap_or_default();
        path.extend(region.continuation(&meeting));
        if self.direction == Direction::Backward {
            path.reverse();
        }
        let mut sol = Solution::new(path, l_min);
        sol.improvements = stats.improvements.clone();
        AStarOutcome::Solved(sol)
    }
}
