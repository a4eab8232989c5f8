//! Transposition table for iterative deepening.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::cost::Cost;

const BUCKET: usize = 4;

/// What a depth-first search learned about a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionEntry<S> {
    pub state: S,
    /// Backed-up estimate; never below `static_h`.
    pub cached_h: Cost,
    pub static_h: Cost,
    /// Path cost at which the state was last searched.
    pub g: Cost,
    /// Iteration that stored the entry.
    pub iteration: u32,
}

impl<S> TranspositionEntry<S> {
    fn value(&self) -> (Cost, Cost) {
        (self.cached_h.saturating_sub(self.static_h), self.g)
    }
}

/// Fixed-capacity table of 4-slot buckets. A full bucket keeps the entries
/// with the largest improvement over the static estimate, then the larger `g`.
#[derive(Clone, Debug)]
pub struct TranspositionTable<S> {
    slots: Vec<Option<TranspositionEntry<S>>>,
    len: usize,
}

impl<S: Eq + Hash> TranspositionTable<S> {
    pub fn new(capacity: usize) -> Self {
        TranspositionTable { slots: (0..capacity).map(|_| None).collect(), len: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn bucket(&self, state: &S) -> std::ops::Range<usize> {
        let buckets = self.slots.len().div_ceil(BUCKET);
        let mut h = DefaultHasher::new();
        state.hash(&mut h);
        let b = (h.finish() % buckets as u64) as usize;
        b * BUCKET..(b * BUCKET + BUCKET).min(self.slots.len())
    }

    pub fn get(&self, state: &S) -> Option<&TranspositionEntry<S>> {
        if self.slots.is_empty() {
            return None;
        }
        self.slots[self.bucket(state)].iter().flatten().find(|e| e.state == *state)
    }

    pub fn store(&mut self, entry: TranspositionEntry<S>) {
        if self.slots.is_empty() {
            return;
        }
        let range = self.bucket(&entry.state);
        let bucket = &mut self.slots[range];
        if let Some(slot) = bucket.iter_mut().flatten().find(|e| e.state == entry.state) {
            *slot = entry;
            return;
        }
        if let Some(slot) = bucket.iter_mut().find(|s| s.is_none()) {
            *slot = Some(entry);
            self.len += 1;
            return;
        }
        let weakest = bucket
            .iter_mut()
            .min_by_key(|s| s.as_ref().map(|e| e.value()))
            .expect("non-empty bucket");
        if weakest.as_ref().is_some_and(|e| e.value() <= entry.value()) {
            *weakest = Some(entry);
        }
    }
}
