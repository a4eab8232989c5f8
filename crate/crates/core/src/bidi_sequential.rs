//! Sequential bidirectional search: a budgeted A* phase in one direction, then
//! a reverse search that treats the stored tree as its goal region.

use std::time::Instant;

use crate::cost::Cost;
use crate::domain::{Direction, Domain};
use crate::error::Result;
use crate::region::Region;
use crate::solution::Solution;
use crate::stats::SearchStats;
use crate::tree::SearchTree;
use crate::unisearch::{astar, AStarOutcome, BestFirst, DepthFirst, RegionProbe, Stop};

pub use crate::region::frontier_reach_gate;

pub type Outcome<S> = (Option<Solution<S>>, SearchStats);

/// The stored structure left by a budgeted A* phase.
pub struct FirstPhaseResult<S> {
    pub direction: Direction,
    pub tree: SearchTree<S>,
    /// Minimum `g + h` over OPEN: a lower bound on `C*`.
    pub fmin: Cost,
    /// Largest `g` over every stored state.
    pub max_frontier_g: Cost,
}

pub enum FirstPhase<S> {
    Done(Outcome<S>),
    Stored(FirstPhaseResult<S>, SearchStats),
}

/// Budgeted A* in `direction`; `None` budget runs to completion.
pub fn first_phase<D: Domain>(domain: &D, direction: Direction, budget: Option<u64>) -> Result<FirstPhase<D::State>> {
    let (outcome, stats) = astar(domain, direction, budget)?;
    Ok(match outcome {
        AStarOutcome::Solved(sol) => FirstPhase::Done((Some(sol), stats)),
        AStarOutcome::NoSolution => FirstPhase::Done((None, stats)),
        AStarOutcome::MemoryExhausted { tree, fmin } => {
            let max_frontier_g = tree.max_g();
            FirstPhase::Stored(FirstPhaseResult { direction, tree, fmin, max_frontier_g }, stats)
        }
    })
}

/// Result of probing: the direction assigned to the depth-first phase, or a
/// solution if a probe finished the job.
pub struct Probe<S> {
    pub direction: Direction,
    pub solution: Option<Solution<S>>,
    pub stats: SearchStats,
}

/// Runs the first `iterations` IDA* iterations from both ends and assigns the
/// depth-first phase the direction that generated fewer nodes (ties forward).
pub fn probe_direction<D: Domain>(domain: &D, iterations: usize) -> Result<Probe<D::State>> {
    let iterations = iterations.max(1);
    let mut stats = SearchStats::new();
    let mut generated = [0u64; 2];
    for d in Direction::BOTH {
        let h = |s: &D::State| domain.heuristic(s, d);
        let mut ida = DepthFirst::new(domain, d, &h);
        ida.stats.nodes_generated = stats.nodes_generated;
        let stop = ida.run(None, Some(iterations))?;
        generated[d.index()] = ida.stats.nodes_generated - stats.nodes_generated;
        stats.nodes_generated = ida.stats.nodes_generated;
        stats.nodes_expanded += ida.stats.nodes_expanded;
        if stop == Stop::Solved {
            stats.probe_generated = stats.nodes_generated;
            stats.probe_expanded = stats.nodes_expanded;
            stats.record_candidate(ida.l_min(), Cost::INFINITY);
            return Ok(Probe { direction: d, solution: ida.solution(), stats });
        }
    }
    stats.probe_generated = stats.nodes_generated;
    stats.probe_expanded = stats.nodes_expanded;
    let direction = if generated[0] <= generated[1] { Direction::Forward } else { Direction::Backward };
    Ok(Probe { direction, solution: None, stats })
}

/// Knobs of the A*-then-IDA* engines.
#[derive(Clone, Debug)]
pub struct BaiConfig {
    /// Generation budget of the A* phase; `None` is unlimited.
    pub astar_node_limit: Option<u64>,
    /// Transposition-table entries for the IDA* phase (BAI-Trans when > 0).
    pub tt_capacity: usize,
    /// Fixes the IDA* direction instead of probing.
    pub ida_direction: Option<Direction>,
    pub probe_iterations: usize,
}

impl Default for BaiConfig {
    fn default() -> Self {
        BaiConfig { astar_node_limit: Some(100_000), tt_capacity: 0, ida_direction: None, probe_iterations: 3 }
    }
}

/// BAI: A* from one end until its budget runs out, then IDA* from the other
/// end toward the stored tree. With `tt_capacity > 0` this is BAI-Trans.
pub fn bai<D: Domain>(domain: &D, astar_node_limit: Option<u64>, tt_capacity: usize) -> Result<Outcome<D::State>> {
    bai_with(domain, &BaiConfig { astar_node_limit, tt_capacity, ..BaiConfig::default() })
}

pub fn bai_with<D: Domain>(domain: &D, config: &BaiConfig) -> Result<Outcome<D::State>> {
    let started = Instant::now();
    let mut stats = SearchStats::new();
    let ida_dir = match config.ida_direction {
        Some(d) => d,
        None => {
            let probe = probe_direction(domain, config.probe_iterations)?;
            stats = probe.stats;
            if probe.solution.is_some() {
                stats.direction_assignment = Some(probe.direction);
                stats.wall_time = started.elapsed();
                return Ok((probe.solution, stats));
            }
            probe.direction
        }
    };
    let h = |s: &D::State| domain.heuristic(s, ida_dir);
    let mut out = sequential_ida(domain, ida_dir, config, &h, stats, |_, _| {})?;
    out.1.wall_time = started.elapsed();
    Ok(out)
}

/// Runs the A* phase opposite to `ida_dir`, then IDA* in `ida_dir` evaluating
/// with `h` (which may be rebuilt from the first phase via `configure`).
pub(crate) fn sequential_ida<D: Domain>(
    domain: &D,
    ida_dir: Direction,
    config: &BaiConfig,
    h: &dyn Fn(&D::State) -> Cost,
    prior: SearchStats,
    configure: impl FnOnce(&FirstPhaseResult<D::State>, &mut SearchStats),
) -> Result<Outcome<D::State>> {
    let mut stats = prior;
    let (phase, astar_stats) = match first_phase(domain, ida_dir.reverse(), config.astar_node_limit)? {
        FirstPhase::Done((sol, s)) => {
            stats.absorb(&s);
            stats.direction_assignment = Some(ida_dir);
            if let Some(sol) = &sol {
                stats.record_candidate(sol.cost, Cost::INFINITY);
            }
            return Ok((sol, stats));
        }
        FirstPhase::Stored(p, s) => (p, s),
    };
    stats.absorb(&astar_stats);
    configure(&phase, &mut stats);
    stats.setup_generated = stats.nodes_generated;
    stats.direction_assignment = Some(ida_dir);
    let probe = RegionProbe { region: &phase.tree as &dyn Region<D::State>, max_stored_g: Some(phase.max_frontier_g) };
    let mut ida = DepthFirst::new(domain, ida_dir, h).with_region(probe).with_table(config.tt_capacity);
    ida.stats = stats;
    let stop = ida.run(Some(phase.fmin), None)?;
    let sol = if stop == Stop::Solved { ida.solution() } else { None };
    let table = ida.table().map_or(0, |t| t.len());
    let mut stats = ida.stats;
    stats.note_memory(phase.tree.stored() + table);
    Ok((sol, stats))
}

/// BAA: A* around `t` for `first_phase_node_budget` generations, then A*
/// from `s` that completes paths on meeting the stored tree.
pub fn baa<D: Domain>(domain: &D, first_phase_node_budget: u64) -> Result<Outcome<D::State>> {
    let h1 = |_: &FirstPhaseResult<D::State>, g: Cost, s: &D::State| g + domain.heuristic(s, Direction::Forward);
    sequential_astar(domain, Direction::Backward, first_phase_node_budget, &|g, s| g + domain.heuristic(s, Direction::Backward), &h1)
}

/// Two A* phases: `phase1_key` orders the budgeted search in `phase1_dir`;
/// `phase2_key` (built from the first phase) orders the reverse search.
pub(crate) fn sequential_astar<D: Domain>(
    domain: &D,
    phase1_dir: Direction,
    budget: u64,
    phase1_key: &dyn Fn(Cost, &D::State) -> Cost,
    phase2_key: &dyn Fn(&FirstPhaseResult<D::State>, Cost, &D::State) -> Cost,
) -> Result<Outcome<D::State>> {
    sequential_astar_with(domain, phase1_dir, budget, phase1_key, phase2_key, |_, _| {})
}

pub(crate) fn sequential_astar_with<D: Domain>(
    domain: &D,
    phase1_dir: Direction,
    budget: u64,
    phase1_key: &dyn Fn(Cost, &D::State) -> Cost,
    phase2_key: &dyn Fn(&FirstPhaseResult<D::State>, Cost, &D::State) -> Cost,
    inspect: impl FnOnce(&FirstPhaseResult<D::State>, &mut SearchStats),
) -> Result<Outcome<D::State>> {
    let started = Instant::now();
    let bf = BestFirst { direction: phase1_dir, key: phase1_key, region: None, node_limit: Some(budget) };
    let (outcome, mut stats) = bf.run(domain)?;
    let phase = match outcome {
        AStarOutcome::Solved(sol) => {
            stats.wall_time = started.elapsed();
            return Ok((Some(sol), stats));
        }
        AStarOutcome::NoSolution => {
            stats.wall_time = started.elapsed();
            return Ok((None, stats));
        }
        AStarOutcome::MemoryExhausted { tree, .. } => {
            // fmin under the plain A* key, whatever ordered the phase
            let fmin = tree
                .open_nodes()
                .map(|n| n.g + domain.heuristic(&n.state, phase1_dir))
                .min()
                .unwrap_or(Cost::INFINITY);
            let max_frontier_g = tree.max_g();
            FirstPhaseResult { direction: phase1_dir, tree, fmin, max_frontier_g }
        }
    };
    inspect(&phase, &mut stats);
    let dir = phase1_dir.reverse();
    let key = |g: Cost, s: &D::State| phase2_key(&phase, g, s);
    let probe = RegionProbe { region: &phase.tree as &dyn Region<D::State>, max_stored_g: Some(phase.max_frontier_g) };
    let bf = BestFirst { direction: dir, key: &key, region: Some(probe), node_limit: None };
    let (outcome, s2) = bf.run(domain)?;
    let setup = stats.nodes_generated;
    let first = stats.first_solution;
    stats.absorb(&s2);
    stats.setup_generated = setup;
    stats.direction_assignment = Some(dir);
    stats.first_solution = first.or(s2.first_solution.map(|(n, c)| (n + setup, c)));
    stats.optimal_found_at = s2.optimal_found_at.map(|n| n + setup);
    stats.improvements = s2.improvements.iter().map(|&(n, c)| (n + setup, c)).collect();
    stats.memory_peak = (phase.tree.stored() as u64) + s2.memory_peak;
    stats.wall_time = started.elapsed();
    Ok((outcome.into_solution().map(|mut s| {
        s.improvements = stats.improvements.clone();
        s
    }), stats))
}
