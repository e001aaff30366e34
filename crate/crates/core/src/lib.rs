//! Lexicographic breadth-first search and the dynamics of repeated LBFS⁺
//! sweeps.
//!
//! The crate covers graph construction and pattern search ([`graph`],
//! [`pattern`], [`io`]), two interchangeable LBFS engines ([`search`]),
//! ordering certificates with replayable witnesses ([`certify`]), orbit and
//! LexCycle computation ([`lexcycle`]), and cocomparability recognition plus
//! seeded generators ([`classes`]).

pub mod certify;
pub mod classes;
pub mod error;
pub mod graph;
pub mod io;
pub mod lexcycle;
pub mod ordering;
pub mod pattern;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use ordering::Ordering;
