//! Shortest-path reconstruction from labels that carry parent pointers.
//!
//! Each entry `(hub, d, parent)` of `L(v)` records the vertex from which the
//! hub's search reached `v`. Following parents from `s` and from `t` up to the
//! best common hub yields a shortest path.

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::pruned::{Index, NO_PARENT};

/// A shortest path `s, ..., t`; `Ok(None)` when `t` is unreachable.
pub fn query_path(index: &Index, s: VertexId, t: VertexId) -> Result<Option<Vec<VertexId>>> {
    index.checked_query(s, t)?;
    if !index.has_paths() {
        return Err(Error::Unsupported("index was built without path labels".into()));
    }
    if s == t {
        return Ok(Some(vec![s]));
    }
    let Some((hub_rank, _, _)) = index.labels().best_hub_with(s, index.labels(), t) else {
        return Ok(None);
    };
    let hub = index.order().vertex_at(hub_rank);
    let mut path = climb(index, s, hub_rank, hub);
    let mut back = climb(index, t, hub_rank, hub);
    back.pop();
    path.extend(back.into_iter().rev());
    Ok(Some(path))
}

/// Vertices from `v` up to and including `hub`.
fn climb(index: &Index, v: VertexId, hub_rank: u32, hub: VertexId) -> Vec<VertexId> {
    let mut out = vec![v];
    let mut cur = v;
    while cur != hub {
        let ranks = index.labels().ranks(cur);
        let pos = ranks
            .binary_search(&hub_rank)
            .expect("parent chain leaves the hub's search tree");
        let parent = index.parent_slice(cur).unwrap()[pos];
        debug_assert_ne!(parent, NO_PARENT);
        out.push(parent);
        cur = parent;
    }
    out
}

impl Index {
    pub fn path(&self, s: VertexId, t: VertexId) -> Result<Option<Vec<VertexId>>> {
        query_path(self, s, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::order::order_degree;
    use crate::pruned::BuildOptions;

    fn with_paths(g: &Graph) -> Index {
        let opts = BuildOptions { record_paths: true, ..Default::default() };
        Index::build(g, order_degree(g), &opts).unwrap()
    }

    #[test]
    fn star_path_goes_through_center() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4)], false).unwrap();
        let idx = with_paths(&g);
        assert_eq!(query_path(&idx, 1, 2).unwrap(), Some(vec![1, 0, 2]));
        assert_eq!(query_path(&idx, 3, 3).unwrap(), Some(vec![3]));
        assert_eq!(query_path(&idx, 1, 5).unwrap(), None);
        assert_eq!(query_path(&idx, 0, 4).unwrap(), Some(vec![0, 4]));
    }

    #[test]
    fn long_path() {
        let g = Graph::from_edges(7, (0..6).map(|i| (i, i + 1)), false).unwrap();
        let idx = with_paths(&g);
        assert_eq!(idx.path(0, 6).unwrap(), Some((0..7).collect()));
        assert_eq!(idx.path(5, 2).unwrap(), Some(vec![5, 4, 3, 2]));
    }

    #[test]
    fn requires_parent_labels() {
        let g = Graph::from_edges(2, [(0, 1)], false).unwrap();
        let idx = Index::build(&g, order_degree(&g), &BuildOptions::default()).unwrap();
        assert!(matches!(query_path(&idx, 0, 1), Err(Error::Unsupported(_))));
        let bad = BuildOptions { record_paths: true, bp_roots: 1, ..Default::default() };
        assert!(Index::build(&g, order_degree(&g), &bad).is_err());
    }
}
