//! Coordination games on weighted directed graphs.
//!
//! Every node of a directed graph picks one colour from its own list; its
//! payoff is the total weight of in-edges whose source picked the same
//! colour, plus a per-colour bonus. On top of that model the crate provides:
//!
//! - payoffs, social welfare, best responses and Nash/k/strong equilibrium
//!   checks ([`game`]);
//! - improvement and coalitional-improvement dynamics with revisit
//!   detection, topological orders and the lexicographic potential for
//!   acyclic graphs ([`dynamics`]);
//! - constructive solvers for the graph classes where a strong equilibrium
//!   is guaranteed: DAGs, simple cycles, graphs whose strongly connected
//!   components are all simple cycles, and games using at most two colours
//!   ([`solvers`]);
//! - a brute-force enumeration oracle for desk-scale ground truth
//!   ([`oracle`]);
//! - the 3-SAT hardness construction, weight expansion and the 0/1
//!   polymatrix translation ([`reductions`]);
//! - a line-oriented file format and the CLI surface ([`format`]).

pub mod dynamics;
pub mod error;
pub mod format;
pub mod game;
pub mod oracle;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};
pub use game::{Colouring, ColourId, Game, GameBuilder, NodeId, DEFAULT_BUDGET};
