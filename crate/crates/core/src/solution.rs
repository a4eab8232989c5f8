use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::cost::Cost;
use crate::domain::{Direction, Domain};
use crate::error::{Result, SearchError};
use crate::tree::SearchTree;

/// A complete `s..t` path.
#[derive(Clone, Debug, Serialize)]
pub struct Solution<S> {
    pub path: Vec<S>,
    pub cost: Cost,
    pub optimal: bool,
    /// `(nodes generated so far, cost)` for each improving solution found.
    pub improvements: Vec<(u64, Cost)>,
}

impl<S: Clone + Eq + Hash + Debug> Solution<S> {
    pub fn new(path: Vec<S>, cost: Cost) -> Self {
        Solution { path, cost, optimal: true, improvements: Vec::new() }
    }

    /// Checks that the path runs from `s` to `t` over real arcs and that the
    /// arc costs add up to `cost`.
    pub fn validate<D: Domain<State = S>>(&self, domain: &D) -> Result<()> {
        let (Some(first), Some(last)) = (self.path.first(), self.path.last()) else {
            return Err(SearchError::Structural("empty path".into()));
        };
        if *first != domain.start() || *last != domain.goal() {
            return Err(SearchError::Structural("path does not connect s and t".into()));
        }
        let mut total = Cost::ZERO;
        let mut succ = Vec::new();
        for pair in self.path.windows(2) {
            succ.clear();
            domain.successors(&pair[0], &mut succ);
            // Parallel arcs: the path may use the cheapest one.
            let Some(k) = succ.iter().filter(|(m, _)| *m == pair[1]).map(|&(_, k)| k).min() else {
                return Err(SearchError::Structural(format!("no arc {:?} -> {:?}", pair[0], pair[1])));
            };
            total += k;
        }
        if total != self.cost {
            return Err(SearchError::Structural(format!("path cost {} != reported {}", total, self.cost)));
        }
        Ok(())
    }
}

/// The bidirectional stopping rule: the best complete path is provably optimal
/// once `L_min <= max(fmin1, fmin2)`.
#[inline]
pub fn termination_met(l_min: Cost, fmin1: Cost, fmin2: Cost) -> bool {
    l_min <= fmin1.max(fmin2)
}

/// Joins the forward tree's path `s..m` with the backward tree's chain `m..t`.
pub fn reconstruct_path<S>(meeting: &S, forward: &SearchTree<S>, backward: &SearchTree<S>) -> Result<Solution<S>>
where
    S: Clone + Eq + Hash + Debug,
{
    if forward.direction() != Direction::Forward || backward.direction() != Direction::Backward {
        return Err(SearchError::Structural("trees passed in the wrong order".into()));
    }
    let fwd = forward
        .lookup(meeting)
        .ok_or_else(|| SearchError::Structural(format!("{:?} missing from forward tree", meeting)))?;
    let bwd = backward
        .lookup(meeting)
        .ok_or_else(|| SearchError::Structural(format!("{:?} missing from backward tree", meeting)))?;
    let prefix = forward.path_from_root(fwd);
    let suffix = backward.path_from_root(bwd);
    let cost = forward.node(fwd).g + backward.node(bwd).g;
    Ok(Solution::new(splice(prefix, suffix), cost))
}

/// `prefix` runs `s..m`, `suffix_from_t` runs `t..m`; returns `s..m..t`.
pub fn splice<S: PartialEq>(mut prefix: Vec<S>, mut suffix_from_t: Vec<S>) -> Vec<S> {
    suffix_from_t.reverse();
    debug_assert!(prefix.last() == suffix_from_t.first());
    prefix.extend(suffix_from_t.into_iter().skip(1));
    prefix
}

/// An arc on which `h(n) <= h(m) + k` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<S> {
    pub direction: Direction,
    pub state: S,
    pub neighbor: S,
    pub arc_cost: Cost,
    pub h_state: Cost,
    pub h_neighbor: Cost,
}

/// Checks `h(n) <= h(m) + k` for every `n` in `states` and every neighbor `m`
/// of `n` in `direction`, using an arbitrary heuristic `h`.
pub fn check_consistency_with<D, I, H>(domain: &D, states: I, direction: Direction, h: H) -> Vec<Violation<D::State>>
where
    D: Domain,
    I: IntoIterator<Item = D::State>,
    H: Fn(&D::State) -> Option<Cost>,
{
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for state in states {
        let Some(h_state) = h(&state) else { continue };
        domain.neighbors(&state, direction, &mut buf);
        for (m, k) in buf.drain(..) {
            let Some(h_neighbor) = h(&m) else { continue };
            if h_state > h_neighbor + k {
                out.push(Violation { direction, state: state.clone(), neighbor: m, arc_cost: k, h_state, h_neighbor });
            }
        }
    }
    out
}

/// Consistency of the domain's own heuristics, in both directions.
pub fn check_consistency<D, I>(domain: &D, states: I) -> Vec<Violation<D::State>>
where
    D: Domain,
    I: IntoIterator<Item = D::State>,
    I::IntoIter: Clone,
{
    let states = states.into_iter();
    let mut out = Vec::new();
    for d in Direction::BOTH {
        out.extend(check_consistency_with(domain, states.clone(), d, |s| Some(domain.heuristic(s, d))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn termination_examples() {
        assert!(termination_met(Cost(10), Cost(8), Cost(10)));
        assert!(!termination_met(Cost(10), Cost(9), Cost(9)));
        assert!(!termination_met(Cost::INFINITY, Cost(9), Cost(40)));
        assert!(termination_met(Cost(3), Cost::INFINITY, Cost(0)));
    }

    #[test]
    fn splice_joins_at_meeting() {
        let path = splice(vec!['s', 'a', 'm'], vec!['t', 'b', 'm']);
        assert_eq!(path, vec!['s', 'a', 'm', 'b', 't']);
        assert_eq!(splice(vec!['s', 't'], vec!['t']), vec!['s', 't']);
    }

    #[test]
    fn reconstruct_from_two_trees() {
        let mut fwd = SearchTree::new(Direction::Forward, 's', Cost(0));
        let r = fwd.pop().unwrap();
        let a = fwd.insert_or_improve('a', Cost(1), Cost(1), r).id();
        fwd.insert_or_improve('m', Cost(2), Cost(2), a);
        let mut bwd = SearchTree::new(Direction::Backward, 't', Cost(0));
        let r = bwd.pop().unwrap();
        let b = bwd.insert_or_improve('b', Cost(1), Cost(1), r).id();
        bwd.insert_or_improve('m', Cost(2), Cost(2), b);
        let sol = reconstruct_path(&'m', &fwd, &bwd).unwrap();
        assert_eq!(sol.path, vec!['s', 'a', 'm', 'b', 't']);
        assert_eq!(sol.cost, Cost(4));
        assert!(reconstruct_path(&'x', &fwd, &bwd).is_err());
        // meeting at t: backward chain is empty
        let t_in_fwd = fwd.lookup(&'m').unwrap();
        fwd.insert_or_improve('t', Cost(3), Cost(3), t_in_fwd);
        let sol = reconstruct_path(&'t', &fwd, &bwd).unwrap();
        assert_eq!(sol.path, vec!['s', 'a', 'm', 't']);
        assert_eq!(sol.cost, Cost(3));
    }
}
