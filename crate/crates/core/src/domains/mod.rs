//! The two experimental testbeds, plus explicit graphs for constructed cases.

pub mod graph;
pub mod maze;
pub mod puzzle;

pub use graph::Graph;
pub use maze::{generate_maze, Maze, MazeCell};
pub use puzzle::{manhattan, PuzzleState, SlidingPuzzle};
