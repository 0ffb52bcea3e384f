//! The domatic number game: two players alternately color vertices of a graph
//! with colors from `1..=k`; Alice wins when every color class dominates.
//!
//! This crate provides the graph primitives, the game rules, an exact
//! memoized solver for the game domatic numbers, executable strategies with
//! an exhaustive validator, and experiment harnesses.

pub mod census;
pub mod domination;
pub mod error;
pub mod experiments;
pub mod family;
pub mod game;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod peel;
pub mod solver;
pub mod strategies;

pub use error::{Error, Result};
pub use family::FamilySpec;
pub use game::{Color, GameConfig, GameState, Move, Player, Status};
pub use graph::{Graph, Vertex, VertexSet};
pub use solver::{KMax, SolveStats, SolverLimits, WinProfile};
