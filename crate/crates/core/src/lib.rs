//! Exact branch-and-bound solver for the minimum hitting set problem.
//!
//! The instance lives in a single [`Hypergraph`] whose deletions are
//! journaled and undone in LIFO order, so the search never copies it.

pub mod bounds;
pub mod format;
pub mod generate;
pub mod hypergraph;
pub mod oracle;
pub mod reductions;
pub mod report;
pub mod settrie;
pub mod solver;
pub mod subset_list;

pub use format::{parse_instance, read_instance, verify, FormatError, InstanceFile};
pub use hypergraph::{BuildError, EdgeId, Hypergraph, Mark, VertexId};
pub use report::{LoopItem, Report};
pub use solver::{solve, GreedyMode, LocalSearch, Settings};
