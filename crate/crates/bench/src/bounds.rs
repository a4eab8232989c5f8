//! Expansion-count bounds relating BHPA to unidirectional A*.

use std::collections::BTreeMap;

use bidir_core::bidi_traditional::bhpa;
use bidir_core::unisearch::astar;
use bidir_core::{Cost, Direction, Domain};
use serde::Serialize;

use crate::error::Result;
use crate::instances::Instance;

/// Per-instance comparison of BHPA with A* from each end.
///
/// `upper_ok`: BHPA expands fewer nodes than both A* runs together.
/// `lower_ok`: BHPA expands at least `min(X1, X2) + 1`, where `X_d` is A*'s
/// expansions in direction `d` excluding those at `f = C*`.
/// `delta` is `2 * A* - BHPA`; it is only reported for symmetric spaces with
/// one expansion per f-value, where it must lie in `1..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub solvable: bool,
    pub cost: Option<u64>,
    pub bhpa_expansions: u64,
    pub a_star_fwd: u64,
    pub a_star_bwd: u64,
    pub x1: u64,
    pub x2: u64,
    pub upper_ok: bool,
    pub lower_ok: bool,
    pub symmetric: bool,
    pub distinct_f: bool,
    pub delta: Option<i64>,
}

impl BoundsReport {
    /// Both bounds hold and, where it applies, `delta` is in range.
    /// Unsolvable instances are excluded rather than failed.
    pub fn ok(&self) -> bool {
        !self.solvable || (self.upper_ok && self.lower_ok && self.delta.is_none_or(|d| (1..=3).contains(&d)))
    }
}

/// Expansions per f-value: selections minus the final goal selection.
fn expansions_by_f(selected: &BTreeMap<Cost, u64>, c_star: Cost) -> BTreeMap<Cost, u64> {
    let mut out = selected.clone();
    if let Some(n) = out.get_mut(&c_star) {
        *n -= 1;
        if *n == 0 {
            out.remove(&c_star);
        }
    }
    out
}

pub fn verify_bounds<D: Domain>(domain: &D) -> Result<BoundsReport> {
    let (bhpa_sol, bhpa_stats) = bhpa(domain)?;
    let (fwd, fwd_stats) = astar(domain, Direction::Forward, None)?;
    let (_, bwd_stats) = astar(domain, Direction::Backward, None)?;
    let Some(c_star) = fwd.solution().map(|s| s.cost) else {
        return Ok(BoundsReport {
            solvable: false,
            cost: None,
            bhpa_expansions: bhpa_stats.nodes_expanded,
            a_star_fwd: fwd_stats.nodes_expanded,
            a_star_bwd: bwd_stats.nodes_expanded,
            x1: 0,
            x2: 0,
            upper_ok: false,
            lower_ok: false,
            symmetric: false,
            distinct_f: false,
            delta: None,
        });
    };
    debug_assert_eq!(bhpa_sol.map(|s| s.cost), Some(c_star));
    let h1 = expansions_by_f(&fwd_stats.f_histogram[Direction::Forward.index()], c_star);
    let h2 = expansions_by_f(&bwd_stats.f_histogram[Direction::Backward.index()], c_star);
    let x = |expanded: u64, h: &BTreeMap<Cost, u64>| expanded - h.get(&c_star).copied().unwrap_or(0);
    let (a1, a2, b) = (fwd_stats.nodes_expanded, bwd_stats.nodes_expanded, bhpa_stats.nodes_expanded);
    let (x1, x2) = (x(a1, &h1), x(a2, &h2));
    let symmetric = h1 == h2;
    let distinct_f = h1.values().all(|&n| n == 1) && h2.values().all(|&n| n == 1);
    Ok(BoundsReport {
        solvable: true,
        cost: c_star.value(),
        bhpa_expansions: b,
        a_star_fwd: a1,
        a_star_bwd: a2,
        x1,
        x2,
        upper_ok: b < a1 + a2,
        lower_ok: x1.min(x2) + 1 <= b,
        symmetric,
        distinct_f,
        delta: (symmetric && distinct_f).then(|| 2 * a1 as i64 - b as i64),
    })
}

pub fn verify_instance(instance: &Instance) -> Result<BoundsReport> {
    match instance {
        Instance::Puzzle(p) => verify_bounds(p),
        Instance::Maze(m) => verify_bounds(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bidir_core::domains::{Graph, SlidingPuzzle};

    #[test]
    fn eight_puzzles_respect_both_bounds() {
        for seed in 0..10 {
            let r = verify_bounds(&SlidingPuzzle::random(3, seed)).unwrap();
            assert!(r.upper_ok && r.lower_ok, "{r:?}");
        }
    }

    #[test]
    fn mirrored_trees_give_small_delta() {
        let r = verify_bounds(&Graph::mirrored_trees(3, 58)).unwrap();
        assert!(r.symmetric && r.distinct_f);
        assert_eq!(r.delta, Some(1));
        assert!(r.ok());
    }

    #[test]
    fn unsolvable_is_excluded() {
        let g = Graph::new(2, 0, 1).unwrap();
        let r = verify_bounds(&g).unwrap();
        assert!(!r.solvable && r.ok());
    }
}
