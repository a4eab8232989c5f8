//! Perimeter search: a fixed-radius backward sweep around `t`, then a forward
//! search evaluating nodes against every stored perimeter node.

use std::time::Instant;

use crate::cost::Cost;
use crate::domain::{Direction, Domain, PairwiseHeuristic};
use crate::error::{Result, SearchError};
use crate::region::{Region, RegionHit};
use crate::solution::Solution;
use crate::stats::SearchStats;
use crate::tree::{NodeStatus, SearchTree};
use crate::unisearch::{BestFirst, DepthFirst, RegionProbe, Stop};

/// States within cost `depth` of `t`, split into the settled interior and the
/// final frontier (the perimeter), each with a stored path to `t`.
pub struct Perimeter<S> {
    pub depth: Cost,
    tree: SearchTree<S>,
    perimeter: Vec<(S, Cost)>,
    min_perimeter_g: Cost,
    /// Generations spent building.
    pub generated: u64,
}

/// Uniform-cost search backward from `t` settling every state nearer than
/// `depth`; the open states left over form the perimeter.
pub fn build_perimeter<D: Domain>(domain: &D, depth: Cost) -> Result<Perimeter<D::State>> {
    let mut tree = SearchTree::new(Direction::Backward, domain.goal(), Cost::ZERO);
    let mut stats = SearchStats::new();
    let mut buf = Vec::new();
    while let Some(top) = tree.peek() {
        if tree.node(top).g >= depth {
            break;
        }
        tree.pop();
        let (state, g) = (tree.node(top).state.clone(), tree.node(top).g);
        domain.predecessors(&state, &mut buf);
        for (p, k) in buf.drain(..) {
            stats.generate()?;
            tree.insert_or_improve(p, g + k, g + k, top);
        }
    }
    let perimeter: Vec<_> = tree.open_nodes().map(|n| (n.state.clone(), n.g)).collect();
    let min_perimeter_g = perimeter.iter().map(|p| p.1).min().unwrap_or(Cost::INFINITY);
    Ok(Perimeter { depth, tree, perimeter, min_perimeter_g, generated: stats.nodes_generated })
}

impl<S: Clone + Eq + std::hash::Hash> Perimeter<S> {
    /// Perimeter states with their cost to `t`.
    pub fn nodes(&self) -> &[(S, Cost)] {
        &self.perimeter
    }

    pub fn is_interior(&self, state: &S) -> bool {
        self.tree.is_closed(state)
    }

    pub fn interior_len(&self) -> usize {
        self.tree.closed_len()
    }

    /// Stored states (interior plus perimeter).
    pub fn stored(&self) -> usize {
        self.tree.stored()
    }
}

/// `min over perimeter nodes B of h(state, B) + g2*(B)`.
pub fn front_to_front_h<D: PairwiseHeuristic>(domain: &D, state: &D::State, perimeter: &Perimeter<D::State>) -> Result<Cost> {
    perimeter
        .perimeter
        .iter()
        .map(|(b, g)| domain.estimate_between(state, b) + *g)
        .min()
        .ok_or(SearchError::EmptyFringe("perimeter is empty"))
}

impl<S: Clone + Eq + std::hash::Hash> Region<S> for Perimeter<S> {
    fn probe(&self, state: &S) -> Option<RegionHit> {
        let node = self.tree.get(state)?;
        match node.status {
            NodeStatus::Closed => Some(RegionHit { cost: node.g, settled: true }),
            // The cheapest perimeter nodes are settled; others carry only the
            // best cost through the interior.
            NodeStatus::Open => Some(RegionHit { cost: node.g, settled: node.g <= self.min_perimeter_g }),
            NodeStatus::Removed => None,
        }
    }

    fn continuation(&self, state: &S) -> Vec<S> {
        self.tree.continuation(state)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PerimeterEngine {
    AStar,
    IdaStar,
}

/// Forward search from `s` using [`front_to_front_h`]; reaching the perimeter
/// or interior completes a path through the stored continuation.
///
/// Construction generations are included in `nodes_generated` and reported
/// separately as `setup_generated`.
pub fn perimeter_search<D: PairwiseHeuristic>(
    domain: &D,
    perimeter: &Perimeter<D::State>,
    engine: PerimeterEngine,
) -> Result<(Option<Solution<D::State>>, SearchStats)> {
    let started = Instant::now();
    let h = |s: &D::State| front_to_front_h(domain, s, perimeter).unwrap_or(Cost::INFINITY);
    let probe = || RegionProbe { region: perimeter as &dyn Region<D::State>, max_stored_g: None };
    let (sol, mut stats) = match engine {
        PerimeterEngine::AStar => {
            let key = |g: Cost, s: &D::State| g + h(s);
            let bf = BestFirst { direction: Direction::Forward, key: &key, region: Some(probe()), node_limit: None };
            let (outcome, stats) = bf.run(domain)?;
            (outcome.into_solution(), stats)
        }
        PerimeterEngine::IdaStar => {
            let mut ida = DepthFirst::new(domain, Direction::Forward, &h).with_region(probe());
            let stop = ida.run(None, None)?;
            let sol = if stop == Stop::Solved { ida.solution() } else { None };
            (sol, ida.stats)
        }
    };
    stats.setup_generated = perimeter.generated;
    stats.nodes_generated += perimeter.generated;
    stats.memory_peak += perimeter.stored() as u64;
    stats.wall_time = started.elapsed();
    Ok((sol, stats))
}
