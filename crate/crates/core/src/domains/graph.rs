//! Small explicit graphs for hand-built instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::domain::{Direction, Domain, PairwiseHeuristic};
use crate::error::{Result, SearchError};

/// A directed graph over `0..n` with per-node heuristic tables.
///
/// Heuristics default to zero, which is always consistent.
#[derive(Clone, Debug)]
pub struct Graph {
    out: Vec<Vec<(usize, Cost)>>,
    inc: Vec<Vec<(usize, Cost)>>,
    h: [Vec<Cost>; 2],
    start: usize,
    goal: usize,
}

impl Graph {
    pub fn new(nodes: usize, start: usize, goal: usize) -> Result<Graph> {
        if start >= nodes || goal >= nodes {
            return Err(SearchError::InvalidInstance(format!("endpoints {start},{goal} outside {nodes} nodes")));
        }
        Ok(Graph {
            out: vec![Vec::new(); nodes],
            inc: vec![Vec::new(); nodes],
            h: [vec![Cost::ZERO; nodes], vec![Cost::ZERO; nodes]],
            start,
            goal,
        })
    }

    /// A path `0 - 1 - ... - len` with unit edges, `s = 0`, `t = len`.
    pub fn chain(len: usize) -> Graph {
        let mut g = Graph::new(len + 1, 0, len).expect("endpoints in range");
        for i in 0..len {
            g.add_edge(i, i + 1, Cost::ONE);
        }
        g
    }

    /// Two mirror-image binary trees of the given depth rooted at `s` and
    /// `t`, joined at their leaves: leaf `j` connects to its own mirror and,
    /// for sibling pairs, to its sibling's mirror. Arc costs are drawn from
    /// `1..1000` by `seed` and repeated in the mirror, so searches from either
    /// end see the same space.
    pub fn mirrored_trees(depth: u32, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = (1usize << (depth + 1)) - 1;
        let n = 2 * tree;
        let mirror = |i: usize| n - 1 - i;
        let mut g = Graph::new(n, 0, n - 1).expect("endpoints in range");
        for i in 1..tree {
            let c = Cost::from(rng.gen_range(1..1000u64));
            g.add_edge((i - 1) / 2, i, c);
            g.add_edge(mirror((i - 1) / 2), mirror(i), c);
        }
        for j in tree / 2..tree {
            let c = Cost::from(rng.gen_range(1..1000u64));
            g.add_edge(j, mirror(j), c);
            if depth > 0 && j % 2 == 1 {
                let c = Cost::from(rng.gen_range(1..1000u64));
                g.add_edge(j, mirror(j + 1), c);
                g.add_edge(j + 1, mirror(j), c);
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cost: Cost) {
        self.out[from].push((to, cost));
        self.inc[to].push((from, cost));
    }

    pub fn add_edge(&mut self, a: usize, b: usize, cost: Cost) {
        self.add_arc(a, b, cost);
        self.add_arc(b, a, cost);
    }

    /// Replaces the heuristic table for `direction`; missing entries are zero.
    pub fn set_heuristic(&mut self, direction: Direction, values: &[Cost]) {
        let table = &mut self.h[direction.index()];
        for (i, slot) in table.iter_mut().enumerate() {
            *slot = values.get(i).copied().unwrap_or(Cost::ZERO);
        }
    }
}

impl Domain for Graph {
    type State = usize;

    fn start(&self) -> usize {
        self.start
    }

    fn goal(&self) -> usize {
        self.goal
    }

    fn successors(&self, state: &usize, out: &mut Vec<(usize, Cost)>) {
        out.extend_from_slice(&self.out[*state]);
    }

    fn predecessors(&self, state: &usize, out: &mut Vec<(usize, Cost)>) {
        out.extend_from_slice(&self.inc[*state]);
    }

    fn heuristic(&self, state: &usize, direction: Direction) -> Cost {
        self.h[direction.index()][*state]
    }
}

impl PairwiseHeuristic for Graph {
    fn estimate_between(&self, _from: &usize, _to: &usize) -> Cost {
        Cost::ZERO
    }
}
