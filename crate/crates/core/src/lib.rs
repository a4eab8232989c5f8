//! Admissible unidirectional and bidirectional heuristic search.
//!
//! Engines share the [`Domain`] abstraction and report [`SearchStats`]
//! alongside a [`Solution`].

pub mod bidi_sequential;
pub mod bidi_traditional;
pub mod cost;
pub mod deadline;
pub mod domain;
pub mod diffheur;
pub mod domains;
pub mod error;
pub mod oracle;
pub mod perimeter;
pub mod region;
pub mod solution;
pub mod stats;
pub mod tree;
pub mod unisearch;

pub use cost::Cost;
pub use domain::{Direction, Domain, PairwiseHeuristic};
pub use error::{Result, SearchError};
pub use solution::{check_consistency, check_consistency_with, reconstruct_path, termination_met, Solution, Violation};
pub use stats::SearchStats;
pub use tree::{NodeId, NodeStatus, SearchNode, SearchTree};
