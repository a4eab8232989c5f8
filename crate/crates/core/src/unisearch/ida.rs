//! Threshold-bounded depth-first search: IDA*, Trans, and the second phase of
//! the sequential bidirectional engines.

use std::time::Instant;

use crate::cost::Cost;
use crate::domain::{Direction, Domain};
use crate::error::Result;
use crate::region::{frontier_reach_gate, RegionHit};
use crate::solution::Solution;
use crate::stats::SearchStats;
use crate::unisearch::astar::RegionProbe;
use crate::unisearch::trans::{TranspositionEntry, TranspositionTable};

/// Callback events for callers that need the shape of an iteration.
pub enum Visit<'s, S> {
    /// Entered with `g + H <= threshold`.
    Entered { state: &'s S, g: Cost },
    /// Generated but not entered because its `g + H` exceeded the threshold.
    Cut { state: &'s S, g: Cost },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stop {
    Solved,
    NoSolution,
    /// `max_iterations` reached; `next` is the threshold of the next one.
    IterationLimit { next: Cost },
}

enum Flow {
    Accept,
    /// Subtree done: smallest `f` above the threshold, backed-up estimate.
    Done { next: Cost, backed: Cost },
}

struct Child<S> {
    f: Cost,
    state: S,
    k: Cost,
    h: Cost,
}

/// IDA* with optional transposition table and optional stored region.
///
/// Parent states are not regenerated. Children are searched in order of
/// increasing `f` (stable). A complete path of cost `L_min` is accepted as
/// soon as `L_min <= threshold`, or after an iteration whose next threshold
/// reaches `L_min`.
pub struct DepthFirst<'a, D: Domain> {
    domain: &'a D,
    direction: Direction,
    target: D::State,
    heuristic: &'a dyn Fn(&D::State) -> Cost,
    region: Option<RegionProbe<'a, D::State>>,
    tt: Option<TranspositionTable<D::State>>,
    observer: Option<&'a mut dyn FnMut(Visit<'_, D::State>)>,
    pub stats: SearchStats,
    l_min: Cost,
    /// Path from the root up to (excluding) the meeting state, and the state.
    best: Option<(Vec<D::State>, D::State, bool)>,
    path: Vec<D::State>,
    scratch: Vec<Vec<(D::State, Cost)>>,
    iteration: u32,
}

impl<'a, D: Domain> DepthFirst<'a, D> {
    pub fn new(domain: &'a D, direction: Direction, heuristic: &'a dyn Fn(&D::State) -> Cost) -> Self {
        let mut stats = SearchStats::new();
        stats.direction_assignment = Some(direction);
        DepthFirst {
            domain,
            direction,
            target: domain.target(direction),
            heuristic,
            region: None,
            tt: None,
            observer: None,
            stats,
            l_min: Cost::INFINITY,
            best: None,
            path: Vec::new(),
            scratch: Vec::new(),
            iteration: 0,
        }
    }

    pub fn with_region(mut self, region: RegionProbe<'a, D::State>) -> Self {
        self.region = Some(region);
        self
    }

    /// A table of capacity 0 is the same as none.
    pub fn with_table(mut self, capacity: usize) -> Self {
        self.tt = (capacity > 0).then(|| TranspositionTable::new(capacity));
        self
    }

    pub fn with_observer(mut self, observer: &'a mut dyn FnMut(Visit<'_, D::State>)) -> Self {
        self.observer = Some(observer);
        self
    }

    pub fn l_min(&self) -> Cost {
        self.l_min
    }

    pub fn table(&self) -> Option<&TranspositionTable<D::State>> {
        self.tt.as_ref()
    }

    /// Runs iterations from `max(H(root), initial_threshold)`.
    pub fn run(&mut self, initial_threshold: Option<Cost>, max_iterations: Option<usize>) -> Result<Stop> {
        let started = Instant::now();
        let stop = self.iterate(initial_threshold, max_iterations);
        self.stats.wall_time += started.elapsed();
        self.stats.note_memory(self.path.len() + self.tt.as_ref().map_or(0, |t| t.len()));
        stop
    }

    fn iterate(&mut self, initial_threshold: Option<Cost>, max_iterations: Option<usize>) -> Result<Stop> {
        let root = self.domain.root(self.direction);
        let h_root = (self.heuristic)(&root);
        let mut threshold = h_root.max(initial_threshold.unwrap_or(Cost::ZERO));
        if let Some(hit) = self.probe(&root) {
            self.candidate(Cost::ZERO + hit.cost, &root, true);
            if hit.settled {
                return Ok(Stop::Solved);
            }
        }
        let mut done = 0;
        loop {
            if max_iterations.is_some_and(|m| done >= m) {
                return Ok(Stop::IterationLimit { next: threshold });
            }
            if self.l_min <= threshold {
                return Ok(Stop::Solved);
            }
            self.iteration += 1;
            self.stats.threshold_sequence.push(threshold);
            let before = self.stats.nodes_generated;
            self.path.clear();
            self.path.push(root.clone());
            let flow = self.dfs(Cost::ZERO, h_root, None, threshold, 0);
            self.stats.iteration_generated.push(self.stats.nodes_generated - before);
            done += 1;
            match flow? {
                Flow::Accept => return Ok(Stop::Solved),
                Flow::Done { next, .. } => {
                    if self.l_min <= next {
                        return Ok(Stop::Solved);
                    }
                    if !next.is_finite() {
                        return Ok(Stop::NoSolution);
                    }
                    threshold = next;
                }
            }
        }
    }

    fn probe(&self, state: &D::State) -> Option<RegionHit> {
        let probe = self.region.as_ref()?;
        if let Some(max_g) = probe.max_stored_g {
            if !frontier_reach_gate(self.domain.heuristic(state, self.direction), max_g) {
                return None;
            }
        }
        probe.region.probe(state)
    }

    /// `self.path` ends at the state whose neighbor `meeting` completes a path.
    fn candidate(&mut self, cost: Cost, meeting: &D::State, via_region: bool) {
        if cost < self.l_min {
            self.stats.record_candidate(cost, self.l_min);
            self.l_min = cost;
            self.best = Some((self.path.clone(), meeting.clone(), via_region));
        }
    }

    fn dfs(&mut self, g: Cost, h: Cost, parent_h: Option<(Cost, Cost)>, threshold: Cost, depth: usize) -> Result<Flow> {
        let state = self.path.last().expect("non-empty path").clone();
        if let Some(obs) = self.observer.as_mut() {
            obs(Visit::Entered { state: &state, g });
        }
        if state == self.target {
            self.path.pop();
            self.candidate(g, &state, false);
            self.path.push(state);
            return Ok(if self.l_min <= threshold { Flow::Accept } else { Flow::Done { next: Cost::INFINITY, backed: Cost::ZERO } });
        }
        self.stats.nodes_expanded += 1;
        if self.scratch.len() <= depth {
            self.scratch.push(Vec::new());
        }
        let mut buf = std::mem::take(&mut self.scratch[depth]);
        self.domain.neighbors(&state, self.direction, &mut buf);
        let parent = if self.path.len() >= 2 { Some(self.path[self.path.len() - 2].clone()) } else { None };
        // The parent is not regenerated, but its estimate still bounds ours.
        let mut backed = parent_h.map_or(Cost::INFINITY, |(k, ph)| k + ph);
        let mut children = Vec::with_capacity(buf.len());
        for (child, k) in buf.drain(..) {
            if parent.as_ref() == Some(&child) {
                continue;
            }
            self.stats.generate()?;
            let g_child = g + k;
            if let Some(hit) = self.probe(&child) {
                self.candidate(g_child + hit.cost, &child, true);
                if hit.settled {
                    self.stats.nipped += 1;
                    backed = backed.min(k + hit.cost);
                    continue;
                }
            }
            let mut h_child = (self.heuristic)(&child);
            if let Some(tt) = &self.tt {
                if let Some(e) = tt.get(&child) {
                    if e.g < g_child || (e.g == g_child && e.iteration == self.iteration) {
                        self.stats.tt_hits += 1;
                        backed = backed.min(k + e.cached_h.max(h_child));
                        continue;
                    }
                    h_child = h_child.max(e.cached_h);
                }
            }
            children.push(Child { f: g_child + h_child, state: child, k, h: h_child });
        }
        self.scratch[depth] = buf;
        if self.l_min <= threshold {
            return Ok(Flow::Accept);
        }
        children.sort_by_key(|c| c.f);
        let mut next = Cost::INFINITY;
        for c in children {
            if c.f > threshold {
                if let Some(obs) = self.observer.as_mut() {
                    obs(Visit::Cut { state: &c.state, g: g + c.k });
                }
                next = next.min(c.f);
                backed = backed.min(c.k + c.h);
                continue;
            }
            self.path.push(c.state);
            let flow = self.dfs(g + c.k, c.h, Some((c.k, h)), threshold, depth + 1)?;
            self.path.pop();
            match flow {
                Flow::Accept => return Ok(Flow::Accept),
                Flow::Done { next: n, backed: b } => {
                    next = next.min(n);
                    backed = backed.min(c.k + b);
                }
            }
        }
        let backed = backed.max(h);
        if let Some(tt) = self.tt.as_mut() {
            let static_h = (self.heuristic)(&state);
            tt.store(TranspositionEntry { state, cached_h: backed, static_h, g, iteration: self.iteration });
        }
        Ok(Flow::Done { next, backed })
    }

    /// The best complete path found, ordered `s..t`.
    pub fn solution(&self) -> Option<Solution<D::State>> {
        let (prefix, meeting, via_region) = self.best.as_ref()?;
        let mut path = prefix.clone();
        if *via_region {
            path.extend(self.region.as_ref()?.region.continuation(meeting));
        } else {
            path.push(meeting.clone());
        }
        if self.direction == Direction::Backward {
            path.reverse();
        }
        let mut sol = Solution::new(path, self.l_min);
        sol.improvements = self.stats.improvements.clone();
        Some(sol)
    }
}

/// IDA* from the root of `direction`, starting at `max(h(root), initial)`.
pub fn idastar<D: Domain>(
    domain: &D,
    direction: Direction,
    initial_threshold: Option<Cost>,
) -> Result<(Option<Solution<D::State>>, SearchStats)> {
    trans(domain, direction, 0, initial_threshold)
}

/// IDA* with a transposition table of `tt_capacity` entries caching backed-up
/// estimates; capacity 0 is plain IDA*.
pub fn trans<D: Domain>(
    domain: &D,
    direction: Direction,
    tt_capacity: usize,
    initial_threshold: Option<Cost>,
) -> Result<(Option<Solution<D::State>>, SearchStats)> {
    let h = |s: &D::State| domain.heuristic(s, direction);
    let mut engine = DepthFirst::new(domain, direction, &h).with_table(tt_capacity);
    let stop = engine.run(initial_threshold, None)?;
    let sol = if stop == Stop::Solved { engine.solution() } else { None };
    Ok((sol, engine.stats))
}
