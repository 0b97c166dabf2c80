//! Extensions of the basic index: directed graphs, weighted graphs and
//! shortest-path reconstruction.

pub mod directed;
pub mod paths;
pub mod weighted;

pub use directed::{build_index_directed, DirectedIndex};
pub use paths::query_path;
pub use weighted::{build_index_weighted, WeightedIndex};
