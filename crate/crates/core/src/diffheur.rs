//! Difference heuristics: improving `h1` with what a search around `t` has
//! learned about how much `h1` underestimates there.
//!
//! *Add* raises `h1` by the constant `Mindiff1`; *Max* uses
//! `max(h1, fmin2 - h2)`.

use std::cell::Cell;
use std::collections::HashSet;
use std::hash::Hash;
use std::time::Instant;

use crate::bidi_sequential::{sequential_astar_with, sequential_ida, BaiConfig, FirstPhaseResult, Outcome};
use crate::cost::Cost;
use crate::domain::{Direction, Domain};
use crate::error::{Result, SearchError};
use crate::stats::SearchStats;
use crate::tree::SearchTree;
use crate::unisearch::{DepthFirst, Stop, Visit};

/// One closed node bordering the unexplored space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FringeNode<S> {
    pub state: S,
    /// Optimal cost from the node to the stored tree's root.
    pub g_star: Cost,
    /// Heuristic toward the far end (`h1` for a tree around `t`).
    pub h_opposite: Cost,
    /// The tree's own heuristic (`h2` for a tree around `t`).
    pub h_own: Cost,
}

/// What the first phase tells the second about its heuristic.
#[derive(Clone, Debug)]
pub struct DiffContext<S> {
    pub mindiff: Cost,
    pub fmin2: Cost,
    pub hmax: Cost,
    pub fringe: Vec<FringeNode<S>>,
}

/// Closed states of `tree` with at least one neighbor that is not closed.
pub fn closed_fringe<D: Domain>(domain: &D, tree: &SearchTree<D::State>) -> Vec<FringeNode<D::State>> {
    let dir = tree.direction();
    let mut buf = Vec::new();
    tree.closed_nodes()
        .filter(|n| {
            domain.neighbors(&n.state, dir, &mut buf);
            buf.iter().any(|(m, _)| !tree.is_closed(m))
        })
        .map(|n| FringeNode {
            state: n.state.clone(),
            g_star: n.g,
            h_opposite: domain.heuristic(&n.state, dir.reverse()),
            h_own: domain.heuristic(&n.state, dir),
        })
        .collect()
}

/// `min over the fringe of g* - h_opposite`.
pub fn compute_mindiff<S>(fringe: &[FringeNode<S>]) -> Result<Cost> {
    fringe
        .iter()
        .map(|b| b.g_star.saturating_sub(b.h_opposite))
        .min()
        .ok_or(SearchError::EmptyFringe("no closed fringe for Mindiff"))
}

/// `min over the fringe of g* + h_own`.
pub fn compute_fmin2<S>(fringe: &[FringeNode<S>]) -> Result<Cost> {
    fringe
        .iter()
        .map(|b| b.g_star + b.h_own)
        .min()
        .ok_or(SearchError::EmptyFringe("no fringe for fmin2"))
}

impl<S: Clone + Eq + Hash> DiffContext<S> {
    /// Derives the difference quantities from a first-phase tree.
    ///
    /// `mindiff` is taken over the closed fringe, whose costs are optimal.
    /// `fmin2` is taken over OPEN: every path from outside the closed region
    /// to the root crosses an open node at its optimal cost, so the minimum
    /// stays a valid bound even though some open costs are not optimal.
    /// An empty region yields the neutral values (`mindiff = 0`,
    /// `fmin2 = h2(root)`).
    pub fn from_tree<D: Domain<State = S>>(domain: &D, tree: &SearchTree<S>) -> DiffContext<S> {
        let dir = tree.direction();
        let fringe = closed_fringe(domain, tree);
        let mindiff = compute_mindiff(&fringe).unwrap_or(Cost::ZERO);
        let fmin2 = tree.open_nodes().map(|n| n.g + domain.heuristic(&n.state, dir)).min().unwrap_or(Cost::INFINITY);
        let hmax = fringe.iter().map(|b| b.h_opposite).max().unwrap_or(Cost::ZERO);
        DiffContext { mindiff, fmin2, hmax, fringe }
    }
}

/// `H1 = h1 + Mindiff1`, valid outside the closed region.
#[inline]
pub fn add_heuristic(h1: Cost, mindiff: Cost) -> Cost {
    h1 + mindiff
}

/// `H1 = max(h1, fmin2 - h2)`, valid outside the closed region.
#[inline]
pub fn max_heuristic(h1: Cost, h2: Cost, fmin2: Cost) -> Cost {
    h1.max(fmin2.saturating_sub(h2))
}

fn add_method<D: Domain>(domain: &D, budget: u64, phase1_key: &dyn Fn(Cost, &D::State) -> Cost) -> Result<Outcome<D::State>> {
    let mindiff = Cell::new(Cost::ZERO);
    let key = |_: &FirstPhaseResult<D::State>, g: Cost, s: &D::State| {
        g + add_heuristic(domain.heuristic(s, Direction::Forward), mindiff.get())
    };
    sequential_astar_with(domain, Direction::Backward, budget, phase1_key, &key, |phase, stats| {
        let ctx = DiffContext::from_tree(domain, &phase.tree);
        mindiff.set(ctx.mindiff);
        stats.mindiff = Some(ctx.mindiff);
        stats.fmin2 = Some(ctx.fmin2);
    })
}

/// Add-BAA: A* around `t` (ordered by `f2`) for `first_phase_node_budget`
/// generations, then A* from `s` with `h1 + Mindiff1`.
pub fn add_baa<D: Domain>(domain: &D, first_phase_node_budget: u64) -> Result<Outcome<D::State>> {
    add_method(domain, first_phase_node_budget, &|g, s| g + domain.heuristic(s, Direction::Backward))
}

/// Add-BDA: like Add-BAA, but the first phase always expands a node of
/// minimal `g2 - h1`, which directly raises Mindiff1.
pub fn add_bda<D: Domain>(domain: &D, first_phase_node_budget: u64) -> Result<Outcome<D::State>> {
    add_method(domain, first_phase_node_budget, &|g, s| g.saturating_sub(domain.heuristic(s, Direction::Forward)))
}

/// Max-BAI: A* around `t` within `astar_node_limit` generations, then IDA*
/// from `s` with `max(h1, fmin2 - h2)`; a table of `tt_capacity > 0` entries
/// makes it Max-BAI-Trans.
pub fn max_bai<D: Domain>(domain: &D, astar_node_limit: Option<u64>, tt_capacity: usize) -> Result<Outcome<D::State>> {
    let started = Instant::now();
    let fmin2 = Cell::new(Cost::ZERO);
    let h = |s: &D::State| {
        max_heuristic(domain.heuristic(s, Direction::Forward), domain.heuristic(s, Direction::Backward), fmin2.get())
    };
    let config = BaiConfig { astar_node_limit, tt_capacity, ida_direction: Some(Direction::Forward), probe_iterations: 0 };
    let mut out = sequential_ida(domain, Direction::Forward, &config, &h, SearchStats::new(), |phase, stats| {
        fmin2.set(phase.fmin);
        stats.fmin2 = Some(phase.fmin);
    })?;
    out.1.wall_time = started.elapsed();
    Ok(out)
}

/// What one Max-IDA* iteration saw, kept only when tracing.
#[derive(Clone, Debug)]
pub struct IterationTrace<S> {
    pub direction: Direction,
    pub threshold: Cost,
    pub visited: HashSet<S>,
    pub cut: HashSet<S>,
    /// `min g + h` over cut-off nodes, under this iteration's static `h`.
    pub fmin: Cost,
    /// `max h` toward the next iteration's target over visited and cut nodes.
    pub hmax: Cost,
}

/// Max-IDA*: IDA* alternating direction after every iteration. Each iteration
/// improves its heuristic with `fmin - h_opposite` from the previous one,
/// but only at nodes whose `h` exceeds the previous iteration's `hmax` and
/// which therefore lie outside the region it searched.
pub fn max_ida<D: Domain>(domain: &D) -> Result<Outcome<D::State>> {
    max_ida_traced(domain, None)
}

pub fn max_ida_traced<D: Domain>(
    domain: &D,
    mut trace: Option<&mut Vec<IterationTrace<D::State>>>,
) -> Result<Outcome<D::State>> {
    let started = Instant::now();
    let mut stats = SearchStats::new();
    let mut dir = Direction::Forward;
    let mut threshold = Cost::ZERO;
    let mut prev: Option<(Cost, Cost)> = None;
    loop {
        let h = |s: &D::State| {
            let own = domain.heuristic(s, dir);
            match prev {
                Some((fmin, hmax)) if own > hmax => max_heuristic(own, domain.heuristic(s, dir.reverse()), fmin),
                _ => own,
            }
        };
        let (mut fmin, mut hmax) = (Cost::INFINITY, Cost::ZERO);
        let mut visited = HashSet::new();
        let mut cut = HashSet::new();
        let tracing = trace.is_some();
        let mut observe = |v: Visit<'_, D::State>| {
            let (state, g, is_cut) = match v {
                Visit::Entered { state, g } => (state, g, false),
                Visit::Cut { state, g } => (state, g, true),
            };
            hmax = hmax.max(domain.heuristic(state, dir.reverse()));
            if is_cut {
                fmin = fmin.min(g + domain.heuristic(state, dir));
            }
            if tracing {
                if is_cut { cut.insert(state.clone()) } else { visited.insert(state.clone()) };
            }
        };
        let mut ida = DepthFirst::new(domain, dir, &h).with_observer(&mut observe);
        let carried = std::mem::take(&mut stats);
        ida.stats = carried;
        ida.stats.direction_assignment = Some(dir);
        let stop = ida.run(Some(threshold), Some(1))?;
        let sol = ida.solution();
        let this_threshold = *ida.stats.threshold_sequence.last().unwrap_or(&threshold);
        stats = std::mem::take(&mut ida.stats);
        drop(ida);
        if let Some(t) = trace.as_deref_mut() {
            t.push(IterationTrace { direction: dir, threshold: this_threshold, visited, cut, fmin, hmax });
        }
        match stop {
            Stop::Solved => {
                stats.wall_time = started.elapsed();
                return Ok((sol, stats));
            }
            Stop::NoSolution => {
                stats.wall_time = started.elapsed();
                return Ok((None, stats));
            }
            Stop::IterationLimit { next } => {
                threshold = next;
                prev = Some((fmin, hmax));
                stats.fmin2 = Some(fmin);
                dir = dir.reverse();
            }
        }
    }
}
