//! Unidirectional engines: A*, IDA* and Trans.

pub mod astar;
pub mod ida;
pub mod trans;

pub use astar::{astar, AStarOutcome, BestFirst, RegionProbe};
pub use ida::{idastar, trans, DepthFirst, Stop, Visit};
pub use trans::{TranspositionEntry, TranspositionTable};
