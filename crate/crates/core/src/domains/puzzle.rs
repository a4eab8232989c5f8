//! Sliding-tile puzzles (Eight and Fifteen) with Manhattan distance.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::domain::{Direction, Domain, PairwiseHeuristic};
use crate::error::{Result, SearchError};

pub const MAX_CELLS: usize = 16;

/// Board configuration: `tiles[i]` is the tile at cell `i` (row-major), 0 is
/// the blank. Cells beyond `n * n` are unused and always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PuzzleState {
    pub tiles: [u8; MAX_CELLS],
    pub blank: u8,
}

impl PuzzleState {
    /// Validates that `tiles` is a permutation of `0..tiles.len()` on a square
    /// board of at most 4x4.
    pub fn from_tiles(tiles: &[u8]) -> Result<PuzzleState> {
        let cells = tiles.len();
        let side = (cells as f64).sqrt() as usize;
        if side * side != cells || !(2..=4).contains(&side) {
            return Err(SearchError::InvalidInstance(format!("{} tiles do not form a 2x2..4x4 board", cells)));
        }
        let mut seen = [false; MAX_CELLS];
        let mut state = PuzzleState { tiles: [0; MAX_CELLS], blank: 0 };
        for (i, &t) in tiles.iter().enumerate() {
            let t_us = t as usize;
            if t_us >= cells {
                return Err(SearchError::InvalidInstance(format!("tile {} out of range", t)));
            }
            if seen[t_us] {
                return Err(SearchError::InvalidInstance(format!("tile {} repeated", t)));
            }
            seen[t_us] = true;
            state.tiles[i] = t;
            if t == 0 {
                state.blank = i as u8;
            }
        }
        Ok(state)
    }

    /// The canonical goal: blank in the top-left corner, then 1, 2, ...
    pub fn solved(side: usize) -> PuzzleState {
        let mut tiles = [0u8; MAX_CELLS];
        for (i, t) in tiles.iter_mut().enumerate().take(side * side) {
            *t = i as u8;
        }
        PuzzleState { tiles, blank: 0 }
    }

    /// Cell of every tile, indexed by tile number.
    pub fn positions(&self, cells: usize) -> [u8; MAX_CELLS] {
        let mut pos = [0u8; MAX_CELLS];
        for i in 0..cells {
            pos[self.tiles[i] as usize] = i as u8;
        }
        pos
    }

    pub fn tiles(&self, cells: usize) -> &[u8] {
        &self.tiles[..cells]
    }
}

impl fmt::Debug for PuzzleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.tiles.iter().rposition(|&t| t != 0).map_or(1, |i| i + 1);
        let side = (1..=4).find(|s| s * s >= cells).unwrap_or(4);
        write!(f, "{:?}", &self.tiles[..side * side])
    }
}

/// Manhattan distance from `state` to the configuration whose tile positions
/// are `target_pos`, blank excluded.
#[inline]
pub fn manhattan_to(state: &PuzzleState, target_pos: &[u8; MAX_CELLS], side: usize) -> Cost {
    let mut sum = 0u64;
    for i in 0..side * side {
        let t = state.tiles[i];
        if t == 0 {
            continue;
        }
        let j = target_pos[t as usize] as usize;
        sum += ((i / side).abs_diff(j / side) + (i % side).abs_diff(j % side)) as u64;
    }
    Cost(sum)
}

/// Manhattan distance between two configurations on a `side`-wide board.
pub fn manhattan(state: &PuzzleState, target: &PuzzleState, side: usize) -> Cost {
    manhattan_to(state, &target.positions(side * side), side)
}

/// Whether `b` is reachable from `a` by blank moves.
pub fn same_component(a: &PuzzleState, b: &PuzzleState, side: usize) -> bool {
    let cells = side * side;
    // Parity of the permutation mapping a onto b, plus blank displacement.
    let pos_b = b.positions(cells);
    let mut perm: Vec<usize> = (0..cells).map(|i| pos_b[a.tiles[i] as usize] as usize).collect();
    let mut swaps = 0usize;
    for i in 0..cells {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            swaps += 1;
        }
    }
    let (ba, bb) = (a.blank as usize, b.blank as usize);
    let blank_dist = (ba / side).abs_diff(bb / side) + (ba % side).abs_diff(bb % side);
    (swaps + blank_dist) % 2 == 0
}

/// Sliding-tile puzzle instance with unit move costs.
#[derive(Clone, Debug)]
pub struct SlidingPuzzle {
    side: usize,
    start: PuzzleState,
    goal: PuzzleState,
    start_pos: [u8; MAX_CELLS],
    goal_pos: [u8; MAX_CELLS],
}

impl SlidingPuzzle {
    pub fn new(side: usize, start: PuzzleState, goal: PuzzleState) -> Result<SlidingPuzzle> {
        if !(2..=4).contains(&side) {
            return Err(SearchError::InvalidInstance(format!("unsupported board side {}", side)));
        }
        if !same_component(&start, &goal, side) {
            return Err(SearchError::InvalidInstance("start cannot reach goal (parity)".into()));
        }
        let cells = side * side;
        Ok(SlidingPuzzle { side, start, goal, start_pos: start.positions(cells), goal_pos: goal.positions(cells) })
    }

    /// Instance from a row-major tile list against the canonical goal.
    pub fn from_tiles(tiles: &[u8]) -> Result<SlidingPuzzle> {
        let start = PuzzleState::from_tiles(tiles)?;
        let side = (tiles.len() as f64).sqrt() as usize;
        SlidingPuzzle::new(side, start, PuzzleState::solved(side))
    }

    /// Uniformly random solvable start state against the canonical goal.
    pub fn random(side: usize, seed: u64) -> SlidingPuzzle {
        let cells = side * side;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tiles: Vec<u8> = (0..cells as u8).collect();
        tiles.shuffle(&mut rng);
        let goal = PuzzleState::solved(side);
        let mut start = PuzzleState::from_tiles(&tiles).expect("shuffled permutation");
        if !same_component(&start, &goal, side) {
            // Swapping two non-blank tiles flips the parity.
            let (i, j) = {
                let mut nb = (0..cells).filter(|&i| start.tiles[i] != 0);
                (nb.next().unwrap(), nb.next().unwrap())
            };
            start.tiles.swap(i, j);
        }
        SlidingPuzzle::new(side, start, goal).expect("parity fixed")
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn cells(&self) -> usize {
        self.side * self.side
    }

    /// Same board with different endpoints.
    pub fn with_endpoints(&self, start: PuzzleState, goal: PuzzleState) -> Result<SlidingPuzzle> {
        SlidingPuzzle::new(self.side, start, goal)
    }

    /// Every configuration reachable from `state` by one blank move.
    pub fn moves(&self, state: &PuzzleState, out: &mut Vec<(PuzzleState, Cost)>) {
        let side = self.side;
        let b = state.blank as usize;
        let (r, c) = (b / side, b % side);
        let mut push = |to: usize| {
            let mut next = *state;
            next.tiles[b] = next.tiles[to];
            next.tiles[to] = 0;
            next.blank = to as u8;
            out.push((next, Cost::ONE));
        };
        if r > 0 {
            push(b - side);
        }
        if c > 0 {
            push(b - 1);
        }
        if c + 1 < side {
            push(b + 1);
        }
        if r + 1 < side {
            push(b + side);
        }
    }
}

impl Domain for SlidingPuzzle {
    type State = PuzzleState;

    fn start(&self) -> PuzzleState {
        self.start
    }

    fn goal(&self) -> PuzzleState {
        self.goal
    }

    fn successors(&self, state: &PuzzleState, out: &mut Vec<(PuzzleState, Cost)>) {
        self.moves(state, out)
    }

    // Moves are self-inverse with unit cost.
    fn predecessors(&self, state: &PuzzleState, out: &mut Vec<(PuzzleState, Cost)>) {
        self.moves(state, out)
    }

    #[inline]
    fn heuristic(&self, state: &PuzzleState, direction: Direction) -> Cost {
        match direction {
            Direction::Forward => manhattan_to(state, &self.goal_pos, self.side),
            Direction::Backward => manhattan_to(state, &self.start_pos, self.side),
        }
    }
}

impl PairwiseHeuristic for SlidingPuzzle {
    fn estimate_between(&self, from: &PuzzleState, to: &PuzzleState) -> Cost {
        manhattan(from, to, self.side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn succ_count(p: &SlidingPuzzle, s: &PuzzleState) -> usize {
        let mut out = Vec::new();
        p.successors(s, &mut out);
        out.len()
    }

    #[test]
    fn branching_by_blank_position() {
        let p = SlidingPuzzle::random(3, 1);
        let corner = PuzzleState::solved(3);
        assert_eq!(succ_count(&p, &corner), 2);
        let center = PuzzleState::from_tiles(&[1, 2, 3, 4, 0, 5, 6, 7, 8]).unwrap();
        assert_eq!(succ_count(&p, &center), 4);
        let edge = PuzzleState::from_tiles(&[1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(succ_count(&p, &edge), 3);
    }

    #[test]
    fn manhattan_basics() {
        let goal = PuzzleState::solved(3);
        assert_eq!(manhattan(&goal, &goal, 3), Cost(0));
        let one = PuzzleState::from_tiles(&[1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(manhattan(&one, &goal, 3), Cost(1));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(PuzzleState::from_tiles(&[0, 1, 1, 3, 4, 5, 6, 7, 8]).is_err());
        assert!(PuzzleState::from_tiles(&[0, 1, 2, 3, 4, 5, 6, 7, 9]).is_err());
        assert!(PuzzleState::from_tiles(&[0, 1, 2]).is_err());
        // a single swap of two tiles is unreachable
        assert!(SlidingPuzzle::from_tiles(&[0, 2, 1, 3, 4, 5, 6, 7, 8]).is_err());
    }

    proptest! {
        #[test]
        fn moves_preserve_permutation_and_component(seed in any::<u64>(), side in 3usize..=4) {
            let p = SlidingPuzzle::random(side, seed);
            let s = p.start();
            prop_assert!(same_component(&s, &p.goal(), side));
            let mut out = Vec::new();
            p.successors(&s, &mut out);
            for (n, k) in out {
                prop_assert_eq!(k, Cost::ONE);
                prop_assert!(PuzzleState::from_tiles(n.tiles(side * side)).is_ok());
                prop_assert!(same_component(&n, &p.goal(), side));
                let mut back = Vec::new();
                p.predecessors(&n, &mut back);
                prop_assert!(back.iter().any(|(m, _)| *m == s));
                let h0 = p.heuristic(&s, Direction::Forward).0;
                let h1 = p.heuristic(&n, Direction::Forward).0;
                prop_assert_eq!(h0.abs_diff(h1), 1);
            }
        }
    }
}
