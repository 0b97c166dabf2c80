//! Exact shortest-path distance queries by pruned landmark labeling.
//!
//! Every vertex gets a label of `(hub, distance)` pairs such that any two
//! vertices share a hub on one of their shortest paths; a query is a merge of
//! two sorted labels. Labels are built by breadth-first searches from each
//! vertex in a chosen order, each pruned wherever the labels built so far
//! already give the right answer. Optional bit-parallel labels cover many
//! pairs up front using one machine word per root.
//!
//! ```
//! use pll_core::{build_index, order_degree, Graph};
//!
//! let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)], false).unwrap();
//! let index = build_index(&g, order_degree(&g)).unwrap();
//! assert_eq!(index.query(0, 3), Some(3));
//! ```

pub mod analysis;
pub mod bitparallel;
pub mod error;
pub mod generate;
pub mod graph;
pub mod label;
pub mod oracle;
pub mod order;
pub mod pruned;
pub mod store;
pub mod variants;
pub mod verify;
pub mod workload;

pub use bitparallel::{bp_bfs, bp_query, build_index_hybrid, select_bp_roots, BpEntry, BpLabels, BpRoot, BP_WIDTH};
pub use error::{Error, Result};
pub use graph::{load_edge_list, Direction, Graph, VertexId};
pub use label::{LabelSet, LabelDistance};
pub use order::{order_closeness, order_degree, order_random, OrderStrategy, VertexOrder};
pub use pruned::{
    build_index, default_bp_roots, query_distance, root_query, BfsStats, BuildOptions, Index,
    IndexBuilder, Workspace, INF8,
};
pub use store::{load_index, load_index_file, save_index, save_index_file, AnyIndex, DiskIndex};
pub use variants::{build_index_directed, build_index_weighted, query_path, DirectedIndex, WeightedIndex};

/// Anything that answers exact point-to-point distances over dense ids.
pub trait DistanceIndex {
    fn num_vertices(&self) -> usize;

    /// `None` when `t` is unreachable from `s`. Panics on out-of-range ids.
    fn distance(&self, s: VertexId, t: VertexId) -> Option<u32>;

    /// External id of each dense vertex.
    fn external_ids(&self) -> &[u64];
}
