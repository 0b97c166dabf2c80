//! Plain single-source searches used as ground truth.
//!
//! Nothing here is tuned; every function allocates fresh arrays.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::Result;
use crate::graph::{Direction, Graph, VertexId};
use crate::label::LabelBuf;
use crate::order::VertexOrder;
use crate::pruned::{Index, INF8};
use crate::bitparallel::{BpLabels, BP_WIDTH};
use crate::label::LabelSet;

/// Distances from one source; `None` marks unreachable vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: VertexId,
    pub dist: Vec<Option<u32>>,
}

impl DistanceRow {
    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.dist[v as usize]
    }
}

/// Hop distances from `s`, ignoring weights.
pub fn bfs_hops(g: &Graph, s: VertexId, dir: Direction) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.num_vertices()];
    let mut queue = VecDeque::new();
    dist[s as usize] = Some(0);
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize].unwrap();
        for &v in g.neighbors(u, dir) {
            if dist[v as usize].is_none() {
                dist[v as usize] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Weighted distances from `s` by Dijkstra's algorithm.
pub fn dijkstra(g: &Graph, s: VertexId, dir: Direction) -> Vec<Option<u32>> {
    let mut dist: Vec<Option<u64>> = vec![None; g.num_vertices()];
    let mut heap = BinaryHeap::new();
    dist[s as usize] = Some(0);
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u as usize].is_some_and(|best| d > best) {
            continue;
        }
        for (v, w) in g.weighted_neighbors(u, dir) {
            let nd = d + w as u64;
            if dist[v as usize].is_none_or(|old| nd < old) {
                dist[v as usize] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist.into_iter()
        .map(|d| d.map(|d| u32::try_from(d).expect("oracle distance exceeds 32 bits")))
        .collect()
}

/// Exact single-source distances: BFS on unweighted graphs, Dijkstra otherwise.
/// `Reverse` gives distances *to* `s` on directed graphs.
pub fn sssp(g: &Graph, s: VertexId, dir: Direction) -> DistanceRow {
    let dist = if g.is_weighted() { dijkstra(g, s, dir) } else { bfs_hops(g, s, dir) };
    DistanceRow { source: s, dist }
}

/// All vertices on some shortest `s`–`t` path, in ascending id order.
pub fn shortest_path_set(g: &Graph, s: VertexId, t: VertexId) -> Vec<VertexId> {
    let from_s = sssp(g, s, Direction::Forward);
    let to_t = sssp(g, t, Direction::Reverse);
    let Some(total) = from_s.get(t) else {
        return Vec::new();
    };
    (0..g.num_vertices() as VertexId)
        .filter(|&v| matches!((from_s.get(v), to_t.get(v)), (Some(a), Some(b)) if a + b == total))
        .collect()
}

/// Unpruned labeling: every vertex stores its distance to every vertex that
/// reaches it, keyed by rank. Only sensible on small graphs.
pub fn build_naive_labels(g: &Graph, order: VertexOrder) -> Result<Index> {
    let n = g.num_vertices();
    let mut labels: Vec<LabelBuf<u8>> = vec![LabelBuf::default(); n];
    for rank in 0..n as u32 {
        let row = bfs_hops(g, order.vertex_at(rank), Direction::Forward);
        for (v, d) in row.iter().enumerate() {
            if let Some(d) = *d {
                let d = u8::try_from(d).ok().filter(|&d| d != INF8).ok_or(
                    crate::Error::DistanceOverflow { root: order.vertex_at(rank), limit: INF8 as u64 },
                )?;
                labels[v].push(rank, d);
            }
        }
    }
    Ok(Index {
        labels: LabelSet::from_bufs(labels),
        bp: BpLabels::empty(n),
        bp_width: BP_WIDTH,
        order,
        parents: None,
        ids: g.external_ids().to_vec(),
        num_arcs: g.num_arcs() as u64,
        stats: Vec::new(),
    })
}
