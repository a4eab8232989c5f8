use bidir_core::bidi_sequential::{baa, bai};
use bidir_core::bidi_traditional::{bhpa, bsstar};
use bidir_core::diffheur::{add_baa, add_bda, max_bai, max_ida};
use bidir_core::domains::{generate_maze, SlidingPuzzle};
use bidir_core::oracle::optimal_cost;
use bidir_core::perimeter::{build_perimeter, perimeter_search, PerimeterEngine};
use bidir_core::unisearch::{astar, idastar, trans};
use bidir_core::{Cost, Direction, PairwiseHeuristic, Result, Solution};

const PUZZLE_COSTS: [u64; 20] = [22, 19, 20, 18, 20, 18, 22, 19, 26, 26, 23, 25, 20, 20, 24, 21, 18, 22, 18, 22];
const MAZE_COSTS: [u64; 12] = [46, 35, 39, 40, 39, 29, 39, 33, 5, 10, 42, 2];

type Engine<D> = (&'static str, fn(&D) -> Result<Option<Solution<<D as bidir_core::Domain>::State>>>);

fn engines<D: PairwiseHeuristic>() -> Vec<Engine<D>> {
    vec![
        ("astar", |d| Ok(astar(d, Direction::Forward, None)?.0.into_solution())),
        ("idastar", |d| Ok(idastar(d, Direction::Forward, None)?.0)),
        ("idastar-backward", |d| Ok(idastar(d, Direction::Backward, None)?.0)),
        ("trans", |d| Ok(trans(d, Direction::Forward, 4096, None)?.0)),
        ("bhpa", |d| Ok(bhpa(d)?.0)),
        ("bsstar", |d| Ok(bsstar(d)?.0)),
        ("bai", |d| Ok(bai(d, Some(500), 0)?.0)),
        ("bai-trans", |d| Ok(bai(d, Some(500), 4096)?.0)),
        ("baa", |d| Ok(baa(d, 500)?.0)),
        ("add-baa", |d| Ok(add_baa(d, 500)?.0)),
        ("add-bda", |d| Ok(add_bda(d, 500)?.0)),
        ("max-bai", |d| Ok(max_bai(d, Some(500), 0)?.0)),
        ("max-ida", |d| Ok(max_ida(d)?.0)),
        ("ps2", |d| Ok(perimeter_search(d, &build_perimeter(d, Cost::from(2))?, PerimeterEngine::AStar)?.0)),
        ("idps3", |d| Ok(perimeter_search(d, &build_perimeter(d, Cost::from(3))?, PerimeterEngine::IdaStar)?.0)),
    ]
}

fn check_all<D: PairwiseHeuristic>(domain: &D, expected: u64, label: &str) {
    assert_eq!(optimal_cost(domain), Some(Cost::from(expected)), "{label}: oracle");
    for (name, run) in engines::<D>() {
        let sol = run(domain).unwrap_or_else(|e| panic!("{label} {name}: {e}")).unwrap_or_else(|| panic!("{label} {name}: no solution"));
        assert_eq!(sol.cost, Cost::from(expected), "{label} {name}");
        sol.validate(domain).unwrap_or_else(|e| panic!("{label} {name}: {e}"));
    }
}

#[test]
fn eight_puzzle_engines_match_frozen_optima() {
    for (seed, &c) in PUZZLE_COSTS.iter().enumerate() {
        check_all(&SlidingPuzzle::random(3, seed as u64), c, &format!("puzzle {seed}"));
    }
}

#[test]
fn maze_engines_match_frozen_optima() {
    for (seed, &c) in MAZE_COSTS.iter().enumerate() {
        check_all(&generate_maze(30, 30, seed as u64, 20).unwrap(), c, &format!("maze {seed}"));
    }
}

#[test]
fn trivial_instance_costs_zero_everywhere() {
    let solved = SlidingPuzzle::random(3, 0);
    let goal = bidir_core::Domain::goal(&solved);
    let p = solved.with_endpoints(goal, goal).unwrap();
    check_all(&p, 0, "trivial");
}
