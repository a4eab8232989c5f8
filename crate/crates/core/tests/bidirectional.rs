use bidir_core::bidi_sequential::{bai_with, first_phase, probe_direction, BaiConfig, FirstPhase};
use bidir_core::bidi_traditional::{bhpa, bsstar};
use bidir_core::diffheur::{add_heuristic, DiffContext};
use bidir_core::domains::{generate_maze, Graph, SlidingPuzzle};
use bidir_core::oracle::optimal_cost;
use bidir_core::region::Region;
use bidir_core::unisearch::{astar, BestFirst, RegionProbe};
use bidir_core::{termination_met, Cost, Direction, Domain};
use proptest::prelude::*;

/// Chain `s .. t` with `leaves` dead ends hanging off `s`.
fn broom(len: usize, leaves: usize) -> Graph {
    let mut g = Graph::new(len + 1 + leaves, 0, len).unwrap();
    for i in 0..len {
        g.add_edge(i, i + 1, Cost::ONE);
    }
    for l in 0..leaves {
        g.add_edge(0, len + 1 + l, Cost::ONE);
    }
    g
}

#[test]
fn symmetric_space_costs_bhpa_twice_astar_minus_delta() {
    let g = Graph::mirrored_trees(3, 58);
    let (sol, stats) = bhpa(&g).unwrap();
    let (_, fwd) = astar(&g, Direction::Forward, None).unwrap();
    let (_, bwd) = astar(&g, Direction::Backward, None).unwrap();
    assert_eq!(sol.unwrap().cost, optimal_cost(&g).unwrap());
    assert_eq!(fwd.f_histogram[0], bwd.f_histogram[1]);
    assert!(fwd.f_histogram[0].values().all(|&n| n == 1));
    let delta = 2 * fwd.nodes_expanded as i64 - stats.nodes_expanded as i64;
    assert_eq!(delta, 1);
}

#[test]
fn nipped_nodes_generate_nothing() {
    for seed in [22, 58, 66] {
        let g = Graph::mirrored_trees(3, seed);
        let (sol, stats) = bsstar(&g).unwrap();
        assert_eq!(Some(sol.unwrap().cost), optimal_cost(&g));
        assert!(stats.nipped >= 1);
        assert_eq!(stats.nodes_expanded + stats.nipped, stats.total_selections());
        let (_, plain) = bhpa(&g).unwrap();
        assert!(stats.nodes_generated < plain.nodes_generated);
    }
}

#[test]
fn bsstar_keeps_the_unique_optimum_in_perfect_mazes() {
    let (mut nipped, mut pruned) = (0, 0);
    for seed in 0..20 {
        let m = generate_maze(30, 30, seed, 0).unwrap();
        let (sol, stats) = bsstar(&m).unwrap();
        let sol = sol.unwrap();
        sol.validate(&m).unwrap();
        assert_eq!(Some(sol.cost), optimal_cost(&m), "seed {seed}");
        nipped += stats.nipped;
        pruned += stats.pruned;
    }
    assert!(nipped > 0 && pruned > 0);
}

#[test]
fn bsstar_records_its_first_meeting() {
    for seed in 0..30 {
        let p = SlidingPuzzle::random(3, seed);
        let (sol, stats) = bsstar(&p).unwrap();
        // Meetings are found at generation time, so the first one can be the
        // very last generation before the stopping test succeeds.
        let (at, cost) = stats.first_solution.unwrap();
        assert!(at <= stats.nodes_generated);
        assert!(cost >= sol.unwrap().cost);
    }
}

#[test]
fn probe_ties_go_forward() {
    let probe = probe_direction(&Graph::chain(10), 3).unwrap();
    assert_eq!(probe.direction, Direction::Forward);
    assert!(probe.solution.is_none());
}

#[test]
fn probe_picks_the_narrow_end() {
    let probe = probe_direction(&broom(10, 20), 3).unwrap();
    assert_eq!(probe.direction, Direction::Backward);
    let probe = probe_direction(&broom(1, 5), 3).unwrap();
    assert_eq!(probe.solution.unwrap().cost, Cost::ONE);
}

#[test]
fn bai_candidates_never_undercut_the_optimum() {
    for seed in 0..40 {
        let p = SlidingPuzzle::random(3, seed);
        let c = optimal_cost(&p).unwrap();
        for limit in [30, 300] {
            let config = BaiConfig { astar_node_limit: Some(limit), ..BaiConfig::default() };
            let (sol, stats) = bai_with(&p, &config).unwrap();
            assert_eq!(sol.unwrap().cost, c);
            assert!(stats.improvements.iter().all(|&(_, k)| k >= c));
            assert_eq!(stats.improvements.last().map(|&(_, k)| k), Some(c));
        }
    }
}

#[test]
fn mindiff_only_brings_termination_forward() {
    for seed in 0..20 {
        let m = generate_maze(40, 40, seed, 15).unwrap();
        let FirstPhase::Stored(phase, _) = first_phase(&m, Direction::Backward, Some(400)).unwrap() else { continue };
        let ctx = DiffContext::from_tree(&m, &phase.tree);
        let run = |mindiff: Cost| {
            let key = |g: Cost, s: &_| g + add_heuristic(m.heuristic(s, Direction::Forward), mindiff);
            let region = RegionProbe { region: &phase.tree as &dyn Region<_>, max_stored_g: None };
            let bf = BestFirst { direction: Direction::Forward, key: &key, region: Some(region), node_limit: None };
            let (outcome, stats) = bf.run(&m).unwrap();
            (outcome.into_solution().unwrap().cost, stats.nodes_expanded)
        };
        let (c0, n0) = run(Cost::ZERO);
        let (c1, n1) = run(ctx.mindiff);
        assert_eq!(c0, c1);
        assert!(n1 <= n0, "seed {seed}: {n1} > {n0}");
    }
}

proptest! {
    #[test]
    fn termination_is_monotone(l in 0u64..50, f1 in 0u64..50, f2 in 0u64..50, dl in 0u64..5, d1 in 0u64..5, d2 in 0u64..5) {
        let before = termination_met(Cost::from(l + dl), Cost::from(f1), Cost::from(f2));
        let after = termination_met(Cost::from(l), Cost::from(f1 + d1), Cost::from(f2 + d2));
        prop_assert!(!before || after);
    }

    #[test]
    fn bhpa_and_bsstar_agree_on_random_graphs(
        n in 2usize..14,
        edges in prop::collection::vec((0usize..14, 0usize..14, 1u64..5), 0..40),
    ) {
        let mut g = Graph::new(n, 0, n - 1).unwrap();
        for (a, b, c) in edges {
            if a < n && b < n && a != b {
                g.add_edge(a, b, Cost::from(c));
            }
        }
        let expected = optimal_cost(&g);
        let (a, _) = bhpa(&g).unwrap();
        let (b, _) = bsstar(&g).unwrap();
        prop_assert_eq!(a.map(|s| s.cost), expected);
        prop_assert_eq!(b.as_ref().map(|s| s.cost), expected);
        if let Some(b) = b {
            prop_assert!(b.validate(&g).is_ok());
        }
    }
}
