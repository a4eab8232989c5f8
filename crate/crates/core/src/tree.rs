//! OPEN/CLOSED bookkeeping shared by every best-first engine.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::cost::Cost;
use crate::domain::Direction;

pub type NodeId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeStatus {
    Open,
    Closed,
    /// Dropped from OPEN without expansion (trimmed or pruned).
    Removed,
}

#[derive(Clone, Debug)]
pub struct SearchNode<S> {
    pub state: S,
    pub g: Cost,
    /// Priority key; `g + h` for A*-ordered trees.
    pub key: Cost,
    pub parent: Option<NodeId>,
    pub status: NodeStatus,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct FrontierEntry {
    key: Cost,
    g: Cost,
    seq: u64,
    id: NodeId,
}

impl Ord for FrontierEntry {
    // BinaryHeap is a max-heap: the "greatest" entry has the smallest key,
    // then the largest g, then the earliest insertion.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .cmp(&self.key)
            .then_with(|| self.g.cmp(&other.g))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Priority queue of open nodes with lazy deletion of stale entries.
///
/// Ties on the key prefer larger `g`, then insertion order.
#[derive(Clone, Debug, Default)]
pub struct Frontier {
    heap: BinaryHeap<FrontierEntry>,
    seq: u64,
}

impl Frontier {
    fn push(&mut self, key: Cost, g: Cost, id: NodeId) {
        self.heap.push(FrontierEntry { key, g, seq: self.seq, id });
        self.seq += 1;
    }
}

pub enum Insertion {
    New(NodeId),
    Improved(NodeId),
    /// Already known with an equal or better `g`.
    Kept(NodeId),
}

impl Insertion {
    pub fn id(&self) -> NodeId {
        match *self {
            Insertion::New(id) | Insertion::Improved(id) | Insertion::Kept(id) => id,
        }
    }

    pub fn changed(&self) -> bool {
        !matches!(self, Insertion::Kept(_))
    }
}

/// One search tree: node arena, hash-addressed OPEN/CLOSED membership and the
/// frontier.
#[derive(Clone, Debug)]
pub struct SearchTree<S> {
    direction: Direction,
    nodes: Vec<SearchNode<S>>,
    index: HashMap<S, NodeId>,
    frontier: Frontier,
    open_keys: BTreeMap<Cost, usize>,
    open_len: usize,
    closed_len: usize,
}

impl<S: Clone + Eq + std::hash::Hash> SearchTree<S> {
    pub fn new(direction: Direction, root: S, root_key: Cost) -> Self {
        let mut tree = SearchTree {
            direction,
            nodes: Vec::new(),
            index: HashMap::new(),
            frontier: Frontier::default(),
            open_keys: BTreeMap::new(),
            open_len: 0,
            closed_len: 0,
        };
        tree.insert(root, Cost::ZERO, root_key, None);
        tree
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn root(&self) -> &SearchNode<S> {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &SearchNode<S> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &SearchNode<S>)> {
        self.nodes.iter().enumerate()
    }

    pub fn lookup(&self, state: &S) -> Option<NodeId> {
        self.index.get(state).copied()
    }

    pub fn get(&self, state: &S) -> Option<&SearchNode<S>> {
        self.lookup(state).map(|id| &self.nodes[id])
    }

    pub fn is_closed(&self, state: &S) -> bool {
        matches!(self.get(state), Some(n) if n.status == NodeStatus::Closed)
    }

    /// Number of stored nodes (open, closed and removed).
    pub fn stored(&self) -> usize {
        self.nodes.len()
    }

    pub fn open_len(&self) -> usize {
        self.open_len
    }

    pub fn closed_len(&self) -> usize {
        self.closed_len
    }

    /// Open nodes whose key is strictly below `bound`.
    pub fn open_len_below(&self, bound: Cost) -> usize {
        self.open_keys.range(..bound).map(|(_, n)| n).sum()
    }

    fn track_open(&mut self, key: Cost, delta: isize) {
        let entry = self.open_keys.entry(key).or_insert(0);
        *entry = (*entry as isize + delta) as usize;
        if *entry == 0 {
            self.open_keys.remove(&key);
        }
        self.open_len = (self.open_len as isize + delta) as usize;
    }

    fn insert(&mut self, state: S, g: Cost, key: Cost, parent: Option<NodeId>) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(SearchNode { state: state.clone(), g, key, parent, status: NodeStatus::Open });
        self.index.insert(state, id);
        self.frontier.push(key, g, id);
        self.track_open(key, 1);
        id
    }

    /// Adds `state` to OPEN, or lowers its `g` if it is open (or removed) and
    /// the new path is cheaper.
    ///
    /// Panics when a cheaper path to a closed state shows up: engines assume
    /// consistent heuristics and never re-open.
    pub fn insert_or_improve(&mut self, state: S, g: Cost, key: Cost, parent: NodeId) -> Insertion {
        let Some(&id) = self.index.get(&state) else {
            return Insertion::New(self.insert(state, g, key, Some(parent)));
        };
        let node = &self.nodes[id];
        if g >= node.g {
            return Insertion::Kept(id);
        }
        match node.status {
            NodeStatus::Closed => panic!(
                "cheaper path to a closed state ({} < {}); heuristic is not consistent",
                g, node.g
            ),
            NodeStatus::Open => {
                let old_key = node.key;
                self.track_open(old_key, -1);
            }
            NodeStatus::Removed => {}
        }
        let node = &mut self.nodes[id];
        node.g = g;
        node.key = key;
        node.parent = Some(parent);
        node.status = NodeStatus::Open;
        self.frontier.push(key, g, id);
        self.track_open(key, 1);
        Insertion::Improved(id)
    }

    fn drop_stale(&mut self) {
        while let Some(top) = self.frontier.heap.peek() {
            let node = &self.nodes[top.id];
            if node.status == NodeStatus::Open && node.g == top.g && node.key == top.key {
                return;
            }
            self.frontier.heap.pop();
        }
    }

    /// The best open node without removing it.
    pub fn peek(&mut self) -> Option<NodeId> {
        self.drop_stale();
        self.frontier.heap.peek().map(|e| e.id)
    }

    /// Minimum key over OPEN, or infinity when OPEN is empty.
    pub fn fmin(&mut self) -> Cost {
        self.peek().map_or(Cost::INFINITY, |id| self.nodes[id].key)
    }

    /// Removes the best open node from OPEN and marks it closed.
    pub fn pop(&mut self) -> Option<NodeId> {
        let id = self.peek()?;
        self.frontier.heap.pop();
        self.close(id);
        Some(id)
    }

    /// Removes the best open node and marks it removed (lazy trimming).
    pub fn pop_removed(&mut self) -> Option<NodeId> {
        let id = self.peek()?;
        self.frontier.heap.pop();
        self.remove(id);
        Some(id)
    }

    /// Marks an open node closed without going through the frontier.
    pub fn close(&mut self, id: NodeId) {
        let node = &self.nodes[id];
        match node.status {
            NodeStatus::Open => {
                let key = node.key;
                self.track_open(key, -1);
            }
            NodeStatus::Closed => return,
            NodeStatus::Removed => {}
        }
        self.nodes[id].status = NodeStatus::Closed;
        self.closed_len += 1;
    }

    /// Drops an open node from OPEN; its heap entry becomes stale.
    pub fn remove(&mut self, id: NodeId) -> bool {
        let node = &self.nodes[id];
        if node.status != NodeStatus::Open {
            return false;
        }
        let key = node.key;
        self.track_open(key, -1);
        self.nodes[id].status = NodeStatus::Removed;
        true
    }

    /// States from the root to `id`, root first.
    pub fn path_from_root(&self, id: NodeId) -> Vec<S> {
        let mut path = Vec::new();
        let mut cur = Some(id);
        while let Some(i) = cur {
            path.push(self.nodes[i].state.clone());
            cur = self.nodes[i].parent;
        }
        path.reverse();
        path
    }

    pub fn open_nodes(&self) -> impl Iterator<Item = &SearchNode<S>> {
        self.nodes.iter().filter(|n| n.status == NodeStatus::Open)
    }

    pub fn closed_nodes(&self) -> impl Iterator<Item = &SearchNode<S>> {
        self.nodes.iter().filter(|n| n.status == NodeStatus::Closed)
    }

    /// Largest `g` over all open and closed nodes.
    pub fn max_g(&self) -> Cost {
        self.nodes
            .iter()
            .filter(|n| n.status != NodeStatus::Removed)
            .map(|n| n.g)
            .max()
            .unwrap_or(Cost::ZERO)
    }
}
