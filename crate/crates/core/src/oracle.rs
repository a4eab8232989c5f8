//! Uniform-cost reference distances, deliberately independent of
//! [`SearchTree`](crate::tree::SearchTree) so engines can be checked against it.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use crate::cost::Cost;
use crate::domain::{Direction, Domain};

/// Optimal distance from the root of `direction` to every reachable state.
///
/// For `Forward` this is `g1*` (cost from `s`); for `Backward` it is the
/// forward cost from each state to `t`, i.e. `h1*`.
pub fn distances<D: Domain>(domain: &D, direction: Direction) -> HashMap<D::State, Cost> {
    distances_from(domain, domain.root(direction), direction, Cost::INFINITY)
}

/// Uniform-cost sweep from `root` over `direction` arcs, settling every state
/// with distance `<= radius`.
pub fn distances_from<D: Domain>(
    domain: &D,
    root: D::State,
    direction: Direction,
    radius: Cost,
) -> HashMap<D::State, Cost> {
    let mut settled: HashMap<D::State, Cost> = HashMap::new();
    let mut best: HashMap<D::State, Cost> = HashMap::new();
    // Entries carry a sequence number so states need no ordering.
    let mut heap = BinaryHeap::new();
    let mut states = Vec::new();
    let mut buf = Vec::new();
    best.insert(root.clone(), Cost::ZERO);
    states.push(root);
    heap.push(Reverse((Cost::ZERO, 0usize)));
    while let Some(Reverse((d, i))) = heap.pop() {
        if d > radius {
            break;
        }
        let state = states[i].clone();
        if settled.contains_key(&state) || best.get(&state) != Some(&d) {
            continue;
        }
        settled.insert(state.clone(), d);
        domain.neighbors(&state, direction, &mut buf);
        for (m, k) in buf.drain(..) {
            let nd = d + k;
            match best.entry(m.clone()) {
                Entry::Occupied(e) if *e.get() <= nd => continue,
                Entry::Occupied(mut e) => {
                    e.insert(nd);
                }
                Entry::Vacant(e) => {
                    e.insert(nd);
                }
            }
            states.push(m);
            heap.push(Reverse((nd, states.len() - 1)));
        }
    }
    settled
}

/// Optimal `s -> t` cost, or `None` when `t` is unreachable.
pub fn optimal_cost<D: Domain>(domain: &D) -> Option<Cost> {
    let goal = domain.goal();
    let mut best: HashMap<D::State, Cost> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let mut states = vec![domain.start()];
    let mut buf = Vec::new();
    best.insert(domain.start(), Cost::ZERO);
    heap.push(Reverse((Cost::ZERO, 0usize)));
    while let Some(Reverse((d, i))) = heap.pop() {
        let state = states[i].clone();
        if best.get(&state) != Some(&d) {
            continue;
        }
        if state == goal {
            return Some(d);
        }
        domain.successors(&state, &mut buf);
        for (m, k) in buf.drain(..) {
            let nd = d + k;
            if best.get(&m).is_some_and(|&old| old <= nd) {
                continue;
            }
            best.insert(m.clone(), nd);
            states.push(m);
            heap.push(Reverse((nd, states.len() - 1)));
        }
    }
    None
}
