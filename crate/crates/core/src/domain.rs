use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;

/// Search direction: forward searches run from `s` toward `t`, backward
/// searches from `t` toward `s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    #[inline]
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

/// A state space with a fixed start `s` and goal `t`.
///
/// `predecessors(n)` must report, for each parent `p`, the same arc cost that
/// `successors(p)` reports for `n`: backward searches always account for the
/// cost of travelling in the forward direction.
///
/// `heuristic(n, Forward)` estimates the cost from `n` to `t`;
/// `heuristic(n, Backward)` estimates the cost from `s` to `n`.
pub trait Domain {
    type State: Clone + Eq + Hash + Debug;

    fn start(&self) -> Self::State;
    fn goal(&self) -> Self::State;
    fn successors(&self, state: &Self::State, out: &mut Vec<(Self::State, Cost)>);
    fn predecessors(&self, state: &Self::State, out: &mut Vec<(Self::State, Cost)>);
    fn heuristic(&self, state: &Self::State, direction: Direction) -> Cost;

    /// Successors for a forward search, predecessors for a backward one.
    fn neighbors(&self, state: &Self::State, direction: Direction, out: &mut Vec<(Self::State, Cost)>) {
        out.clear();
        match direction {
            Direction::Forward => self.successors(state, out),
            Direction::Backward => self.predecessors(state, out),
        }
    }

    /// Where a search in `direction` starts.
    fn root(&self, direction: Direction) -> Self::State {
        match direction {
            Direction::Forward => self.start(),
            Direction::Backward => self.goal(),
        }
    }

    /// Where a search in `direction` is heading.
    fn target(&self, direction: Direction) -> Self::State {
        self.root(direction.reverse())
    }
}

/// Heuristic estimate between two arbitrary states, used for front-to-front
/// evaluation against a stored perimeter.
pub trait PairwiseHeuristic: Domain {
    /// Lower bound on the forward cost from `from` to `to`.
    fn estimate_between(&self, from: &Self::State, to: &Self::State) -> Cost;
}

impl<D: Domain + ?Sized> Domain for &D {
    type State = D::State;

    fn start(&self) -> Self::State {
        (**self).start()
    }
    fn goal(&self) -> Self::State {
        (**self).goal()
    }
    fn successors(&self, state: &Self::State, out: &mut Vec<(Self::State, Cost)>) {
        (**self).successors(state, out)
    }
    fn predecessors(&self, state: &Self::State, out: &mut Vec<(Self::State, Cost)>) {
        (**self).predecessors(state, out)
    }
    fn heuristic(&self, state: &Self::State, direction: Direction) -> Cost {
        (**self).heuristic(state, direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_is_an_involution() {
        for d in Direction::BOTH {
            assert_eq!(d.reverse().reverse(), d);
            assert_ne!(d.reverse(), d);
        }
        assert_eq!(Direction::Forward.index(), 0);
        assert_eq!(Direction::Backward.index(), 1);
    }
}
