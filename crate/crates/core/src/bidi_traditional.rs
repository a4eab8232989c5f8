//! Alternating bidirectional A*: BHPA and Kwa's BS*.

use std::hash::Hash;
use std::time::Instant;

use crate::cost::Cost;
use crate::domain::{Direction, Domain};
use crate::error::Result;
use crate::solution::{splice, termination_met, Solution};
use crate::stats::SearchStats;
use crate::tree::{NodeId, NodeStatus, SearchTree};

/// Pohl's cardinality criterion: expand forward iff `|OPEN1| <= |OPEN2|`.
#[inline]
pub fn cardinality_choose(open1_size: usize, open2_size: usize) -> Direction {
    if open1_size <= open2_size {
        Direction::Forward
    } else {
        Direction::Backward
    }
}

struct Bidi<D: Domain> {
    trees: [SearchTree<D::State>; 2],
    l_min: Cost,
    best_path: Option<Vec<D::State>>,
    stats: SearchStats,
}

impl<D: Domain> Bidi<D> {
    fn new(domain: &D) -> Self {
        let tree = |d: Direction| {
            let root = domain.root(d);
            let h = domain.heuristic(&root, d);
            SearchTree::new(d, root, h)
        };
        Bidi {
            trees: [tree(Direction::Forward), tree(Direction::Backward)],
            l_min: Cost::INFINITY,
            best_path: None,
            stats: SearchStats::new(),
        }
    }

    fn tree(&mut self, d: Direction) -> &mut SearchTree<D::State> {
        &mut self.trees[d.index()]
    }

    /// A path through `state`, reached in direction `d` via `prefix` (root of
    /// `d` .. `state`), continued along the opposite tree.
    fn candidate(&mut self, d: Direction, prefix: impl FnOnce(&Self) -> Vec<D::State>, state: &D::State, cost: Cost) {
        if cost >= self.l_min {
            return;
        }
        self.stats.record_candidate(cost, self.l_min);
        self.l_min = cost;
        let opposite = &self.trees[d.reverse().index()];
        let rest = opposite.path_from_root(opposite.lookup(state).expect("meeting state in opposite tree"));
        let mut path = splice(prefix(self), rest);
        if d == Direction::Backward {
            path.reverse();
        }
        self.best_path = Some(path);
    }

    fn finish(mut self, started: Instant) -> (Option<Solution<D::State>>, SearchStats) {
        self.stats.note_memory(self.trees[0].stored() + self.trees[1].stored());
        self.stats.wall_time = started.elapsed();
        let sol = self.best_path.take().map(|path| {
            let mut s = Solution::new(path, self.l_min);
            s.improvements = self.stats.improvements.clone();
            s
        });
        (sol, self.stats)
    }
}

/// Bidirectional heuristic path algorithm: two A* searches alternated by the
/// cardinality criterion, stopping once `L_min <= max(fmin1, fmin2)`.
///
/// A selected node whose state is known to the opposite tree (open or closed)
/// completes a path of cost `g1 + g2`.
pub fn bhpa<D: Domain>(domain: &D) -> Result<(Option<Solution<D::State>>, SearchStats)> {
    let started = Instant::now();
    let mut b = Bidi::new(domain);
    let mut buf = Vec::new();
    loop {
        let (f1, f2) = (b.trees[0].fmin(), b.trees[1].fmin());
        if b.l_min.is_finite() && termination_met(b.l_min, f1, f2) {
            break;
        }
        let d = cardinality_choose(b.trees[0].open_len(), b.trees[1].open_len());
        let Some(id) = b.tree(d).pop() else { break };
        let node = b.tree(d).node(id).clone();
        b.stats.select(d, node.key);
        let opposite = b.trees[d.reverse().index()].get(&node.state).filter(|n| n.status != NodeStatus::Removed);
        if let Some(opp_g) = opposite.map(|n| n.g) {
            b.candidate(d, |b| b.trees[d.index()].path_from_root(id), &node.state, node.g + opp_g);
            // The selected node is not expanded yet, so its key still bounds
            // its side.
            let mut f = [b.trees[0].fmin(), b.trees[1].fmin()];
            f[d.index()] = f[d.index()].min(node.key);
            if termination_met(b.l_min, f[0], f[1]) {
                break;
            }
        }
        b.stats.nodes_expanded += 1;
        domain.neighbors(&node.state, d, &mut buf);
        for (child, k) in buf.drain(..) {
            b.stats.generate()?;
            let g = node.g + k;
            let key = g + domain.heuristic(&child, d);
            b.tree(d).insert_or_improve(child, g, key, id);
        }
    }
    Ok(b.finish(started))
}

/// BS*: BHPA with trimming, screening, nipping and pruning.
///
/// Meetings are detected when a node is generated. Trimming is lazy: open
/// nodes with `f >= L_min` are dropped when they reach the top of OPEN, and the
/// cardinality criterion counts only open nodes below `L_min`. The search ends
/// once either side has no such node left.
pub fn bsstar<D: Domain>(domain: &D) -> Result<(Option<Solution<D::State>>, SearchStats)> {
    let started = Instant::now();
    let mut b = Bidi::new(domain);
    if domain.start() == domain.goal() {
        let s = domain.start();
        b.candidate(Direction::Forward, |_| vec![s.clone()], &s, Cost::ZERO);
    }
    let mut buf = Vec::new();
    loop {
        let live = [b.trees[0].open_len_below(b.l_min), b.trees[1].open_len_below(b.l_min)];
        if live[0] == 0 || live[1] == 0 {
            break;
        }
        let d = cardinality_choose(live[0], live[1]);
        let top = b.tree(d).peek().expect("live open node");
        let l_min = b.l_min;
        if b.tree(d).node(top).key >= l_min {
            b.tree(d).pop_removed();
            b.stats.trimmed += 1;
            continue;
        }
        let id = b.tree(d).pop().expect("peeked");
        let node = b.tree(d).node(id).clone();
        b.stats.select(d, node.key);
        if b.trees[d.reverse().index()].is_closed(&node.state) {
            b.stats.nipped += 1;
            prune_descendants(domain, &mut b.trees[d.reverse().index()], &node.state, &mut b.stats);
            continue;
        }
        b.stats.nodes_expanded += 1;
        domain.neighbors(&node.state, d, &mut buf);
        for (child, k) in buf.drain(..) {
            b.stats.generate()?;
            let g = node.g + k;
            let opposite = b.trees[d.reverse().index()].get(&child).filter(|n| n.status != NodeStatus::Removed);
            if let Some(opp_g) = opposite.map(|n| n.g) {
                let prefix = |b: &Bidi<D>| {
                    let mut p = b.trees[d.index()].path_from_root(id);
                    p.push(child.clone());
                    p
                };
                b.candidate(d, prefix, &child, g + opp_g);
            }
            let key = g + domain.heuristic(&child, d);
            if key >= b.l_min {
                b.stats.screened += 1;
                continue;
            }
            b.tree(d).insert_or_improve(child, g, key, id);
        }
    }
    Ok(b.finish(started))
}

/// Removes every open node of `tree` whose parent chain passes through
/// `state`. Children are found by regenerating neighbors, which is
/// bookkeeping and not counted as generation.
fn prune_descendants<D: Domain>(domain: &D, tree: &mut SearchTree<D::State>, state: &D::State, stats: &mut SearchStats)
where
    D::State: Hash + Eq,
{
    let Some(root) = tree.lookup(state) else { return };
    let mut stack: Vec<NodeId> = vec![root];
    let mut buf = Vec::new();
    while let Some(id) = stack.pop() {
        let parent_state = tree.node(id).state.clone();
        domain.neighbors(&parent_state, tree.direction(), &mut buf);
        for (child, _) in buf.drain(..) {
            let Some(cid) = tree.lookup(&child) else { continue };
            if tree.node(cid).parent != Some(id) {
                continue;
            }
            if tree.remove(cid) {
                stats.pruned += 1;
            }
            stack.push(cid);
        }
    }
}
