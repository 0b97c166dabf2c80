//! Directed graphs keep two labels per vertex: hubs reachable from it
//! (`out`) and hubs reaching it (`in`). `d(s, t)` is the merge of `out(s)`
//! with `in(t)`.

use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexId};
use crate::label::{to_option, LabelBuf, LabelSet};
use crate::order::VertexOrder;
use crate::pruned::{pruned_bfs_kernel, BfsStats, Workspace};
use crate::DistanceIndex;

#[derive(Clone, Debug)]
pub struct DirectedIndex {
    pub(crate) out: LabelSet<u8>,
    pub(crate) inn: LabelSet<u8>,
    pub(crate) order: VertexOrder,
    pub(crate) ids: Vec<u64>,
    pub(crate) num_arcs: u64,
    pub(crate) stats: Vec<(BfsStats, BfsStats)>,
}

impl PartialEq for DirectedIndex {
    fn eq(&self, other: &Self) -> bool {
        self.out == other.out
            && self.inn == other.inn
            && self.order.vertices() == other.order.vertices()
            && self.ids == other.ids
            && self.num_arcs == other.num_arcs
    }
}

/// Builds both label sets. For each rank the forward search (filling `in`
/// labels) runs before the reverse search (filling `out` labels), so the
/// reverse search already prunes against the forward one.
pub fn build_index_directed(g: &Graph, order: VertexOrder) -> Result<DirectedIndex> {
    if !g.is_directed() || g.is_weighted() {
        return Err(Error::Unsupported(
            "directed labeling needs a directed, unweighted graph".into(),
        ));
    }
    if order.len() != g.num_vertices() {
        return Err(Error::InvalidOrder("order does not match the graph".into()));
    }
    let n = g.num_vertices();
    let mut out: Vec<LabelBuf<u8>> = vec![LabelBuf::default(); n];
    let mut inn: Vec<LabelBuf<u8>> = vec![LabelBuf::default(); n];
    let mut ws = Workspace::new(n);
    let mut stats = Vec::with_capacity(n);
    for rank in 0..n as u32 {
        let root = order.vertex_at(rank);

        let l = &out[root as usize];
        ws.load_root(&l.ranks, &l.dists);
        let fwd = pruned_bfs_kernel(g, Direction::Forward, root, rank, &mut ws, &mut inn, None, None);
        ws.unload_root();
        let fwd = fwd?;

        let l = &inn[root as usize];
        ws.load_root(&l.ranks, &l.dists);
        let rev = pruned_bfs_kernel(g, Direction::Reverse, root, rank, &mut ws, &mut out, None, None);
        ws.unload_root();
        stats.push((fwd, rev?));
    }
    Ok(DirectedIndex {
        out: LabelSet::from_bufs(out),
        inn: LabelSet::from_bufs(inn),
        order,
        ids: g.external_ids().to_vec(),
        num_arcs: g.num_arcs() as u64,
        stats,
    })
}

impl DirectedIndex {
    pub fn num_vertices(&self) -> usize {
        self.out.num_vertices()
    }

    pub fn num_arcs(&self) -> u64 {
        self.num_arcs
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn out_labels(&self) -> &LabelSet<u8> {
        &self.out
    }

    pub fn in_labels(&self) -> &LabelSet<u8> {
        &self.inn
    }

    /// Forward and reverse search counters per rank.
    pub fn build_stats(&self) -> &[(BfsStats, BfsStats)] {
        &self.stats
    }

    /// Average of `|out| + |in|` per vertex.
    pub fn avg_label_size(&self) -> f64 {
        (self.out.total_entries() + self.inn.total_entries()) as f64
            / self.num_vertices().max(1) as f64
    }

    /// Length of a shortest directed path from `s` to `t`.
    #[inline]
    pub fn query(&self, s: VertexId, t: VertexId) -> Option<u32> {
        to_option(self.out.query_with(s, &self.inn, t))
    }

    pub fn without_entry(&self, v: VertexId, pos: usize, outgoing: bool) -> Self {
        let mut c = self.clone();
        if outgoing {
            c.out = self.out.without_entry(v, pos);
        } else {
            c.inn = self.inn.without_entry(v, pos);
        }
        c
    }
}

impl DistanceIndex for DirectedIndex {
    fn num_vertices(&self) -> usize {
        DirectedIndex::num_vertices(self)
    }

    fn distance(&self, s: VertexId, t: VertexId) -> Option<u32> {
        self.query(s, t)
    }

    fn external_ids(&self) -> &[u64] {
        &self.ids
    }
}
