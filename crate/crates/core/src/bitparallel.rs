//! Bit-parallel labels.
//!
//! One breadth-first search from a root `r` also tracks, for every vertex `v`,
//! which of up to 64 chosen neighbors of `r` are one step closer to `v` than
//! `r` is (`mask_m1`) or equally close (`mask_0`). A pair sharing a root can
//! then be answered through any of `r` and its chosen neighbors with a few
//! word operations.

use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexId};
use crate::order::VertexOrder;
use crate::pruned::{BuildOptions, Index, INF8};

/// Default and maximum neighbor-set width: one 64-bit word.
pub const BP_WIDTH: usize = 64;

/// One bit-parallel label entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BpEntry {
    /// Rank of the root vertex.
    pub root: u32,
    pub dist: u8,
    /// Chosen neighbors `u` with `d(u, v) = dist - 1`.
    pub mask_m1: u64,
    /// Chosen neighbors `u` with `d(u, v) = dist`.
    pub mask_0: u64,
}

/// A root and its chosen neighbors; bit `j` of a mask refers to `neighbors[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpRoot {
    pub root: VertexId,
    pub neighbors: Vec<VertexId>,
}

/// Per-vertex result of [`bp_bfs`]; unreached vertices hold `(INF8, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpSearch {
    pub dist: Vec<u8>,
    pub mask_m1: Vec<u64>,
    pub mask_0: Vec<u64>,
}

impl BpSearch {
    pub fn at(&self, v: VertexId) -> (u8, u64, u64) {
        let v = v as usize;
        (self.dist[v], self.mask_m1[v], self.mask_0[v])
    }
}

/// Bit-parallel BFS from `root` and `neighbors` (bit `j` = `neighbors[j]`).
///
/// Levels are processed one at a time. Edges inside a level propagate
/// `mask_m1` into `mask_0`; edges to the next level then carry both masks
/// forward. Chosen neighbors start at distance 1 with their own bit set.
pub fn bp_bfs(g: &Graph, root: VertexId, neighbors: &[VertexId]) -> Result<BpSearch> {
    if g.is_directed() || g.is_weighted() {
        return Err(Error::Unsupported(
            "bit-parallel search needs an undirected, unweighted graph".into(),
        ));
    }
    g.check_vertex(root)?;
    if neighbors.len() > BP_WIDTH {
        return Err(Error::InvalidNeighborSet(format!(
            "{} vertices exceed the {BP_WIDTH}-bit mask",
            neighbors.len()
        )));
    }
    let adj = g.neighbors(root, Direction::Forward);
    for (j, &s) in neighbors.iter().enumerate() {
        if adj.binary_search(&s).is_err() {
            return Err(Error::InvalidNeighborSet(format!("{s} is not adjacent to root {root}")));
        }
        if neighbors[..j].contains(&s) {
            return Err(Error::InvalidNeighborSet(format!("{s} listed twice")));
        }
    }

    let n = g.num_vertices();
    let mut dist = vec![INF8; n];
    let mut m1 = vec![0u64; n];
    let mut m0 = vec![0u64; n];
    dist[root as usize] = 0;

    let mut current = vec![root];
    let mut next: Vec<VertexId> = Vec::with_capacity(neighbors.len());
    for (j, &s) in neighbors.iter().enumerate() {
        dist[s as usize] = 1;
        m1[s as usize] = 1 << j;
        next.push(s);
    }

    let mut same_level: Vec<(VertexId, VertexId)> = Vec::new();
    let mut next_level: Vec<(VertexId, VertexId)> = Vec::new();
    while !current.is_empty() {
        same_level.clear();
        next_level.clear();
        for &v in &current {
            let dv = dist[v as usize];
            for &u in g.neighbors(v, Direction::Forward) {
                let du = dist[u as usize];
                if du == INF8 || du == dv + 1 {
                    next_level.push((v, u));
                    if du == INF8 {
                        if dv + 1 == INF8 {
                            return Err(Error::DistanceOverflow { root, limit: INF8 as u64 });
                        }
                        dist[u as usize] = dv + 1;
                        next.push(u);
                    }
                } else if du == dv {
                    same_level.push((v, u));
                }
            }
        }
        for &(v, u) in &same_level {
            m0[u as usize] |= m1[v as usize];
        }
        // A bit already at distance - 1 may also arrive through a same-level
        // edge or a parent's mask_0; keep the two sets disjoint.
        for &v in &current {
            m0[v as usize] &= !m1[v as usize];
        }
        for &(v, u) in &next_level {
            m1[u as usize] |= m1[v as usize];
            m0[u as usize] |= m0[v as usize];
        }
        std::mem::swap(&mut current, &mut next);
        next.clear();
    }
    Ok(BpSearch { dist, mask_m1: m1, mask_0: m0 })
}

/// Distance between two vertices through the shared root or any of its
/// chosen neighbors. Both entries must carry the same root.
#[inline]
pub fn bp_query(s: &BpEntry, t: &BpEntry) -> u32 {
    assert_eq!(s.root, t.root, "bit-parallel entries with different roots");
    let upper = s.dist as u32 + t.dist as u32;
    if s.mask_m1 & t.mask_m1 != 0 {
        upper - 2
    } else if (s.mask_0 & t.mask_m1) | (s.mask_m1 & t.mask_0) != 0 {
        upper - 1
    } else {
        upper
    }
}

/// Greedy root selection: `t` times, take the lowest-rank unused vertex as
/// root and up to `width` of its lowest-rank unused neighbors.
pub fn select_bp_roots(g: &Graph, order: &VertexOrder, t: usize, width: usize) -> Result<Vec<BpRoot>> {
    if width == 0 || width > BP_WIDTH {
        return Err(Error::InvalidNeighborSet(format!(
            "width {width} outside 1..={BP_WIDTH}"
        )));
    }
    let n = g.num_vertices();
    let mut used = vec![false; n];
    let mut roots = Vec::with_capacity(t.min(n));
    let mut cursor = 0u32;
    while roots.len() < t {
        while (cursor as usize) < n && used[order.vertex_at(cursor) as usize] {
            cursor += 1;
        }
        if cursor as usize == n {
            break;
        }
        let root = order.vertex_at(cursor);
        used[root as usize] = true;
        let mut candidates: Vec<VertexId> = g
            .neighbors(root, Direction::Forward)
            .iter()
            .copied()
            .filter(|&u| !used[u as usize])
            .collect();
        candidates.sort_unstable_by_key(|&u| order.rank_of(u));
        candidates.truncate(width);
        for &u in &candidates {
            used[u as usize] = true;
        }
        roots.push(BpRoot { root, neighbors: candidates });
    }
    Ok(roots)
}

/// Bit-parallel labels of all vertices, sorted by root rank per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpLabels {
    offsets: Vec<usize>,
    entries: Vec<BpEntry>,
    roots: usize,
}

impl BpLabels {
    pub fn empty(n: usize) -> Self {
        BpLabels { offsets: vec![0; n + 1], entries: Vec::new(), roots: 0 }
    }

    /// Runs one bit-parallel search per root and appends an entry to every
    /// vertex it reaches.
    pub fn build(g: &Graph, order: &VertexOrder, roots: &[BpRoot]) -> Result<Self> {
        let n = g.num_vertices();
        let mut per_vertex: Vec<Vec<BpEntry>> = vec![Vec::new(); n];
        for r in roots {
            let search = bp_bfs(g, r.root, &r.neighbors)?;
            let rank = order.rank_of(r.root);
            for (v, label) in per_vertex.iter_mut().enumerate() {
                let (dist, mask_m1, mask_0) = search.at(v as VertexId);
                if dist != INF8 {
                    label.push(BpEntry { root: rank, dist, mask_m1, mask_0 });
                }
            }
        }
        for label in &mut per_vertex {
            label.sort_unstable_by_key(|e| e.root);
        }
        Ok(Self::from_per_vertex(per_vertex, roots.len()))
    }

    pub(crate) fn from_per_vertex(per_vertex: Vec<Vec<BpEntry>>, roots: usize) -> Self {
        let mut offsets = Vec::with_capacity(per_vertex.len() + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for label in per_vertex {
            entries.extend(label);
            offsets.push(entries.len());
        }
        BpLabels { offsets, entries, roots }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of bit-parallel searches the labels came from.
    pub fn num_roots(&self) -> usize {
        self.roots
    }

    #[inline]
    pub fn entries(&self, v: VertexId) -> &[BpEntry] {
        &self.entries[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn total_entries(&self) -> usize {
        self.entries.len()
    }
}

/// Runs `t` bit-parallel searches, then pruned searches from every vertex
/// that prune against both kinds of labels.
pub fn build_index_hybrid(g: &Graph, order: VertexOrder, t: usize) -> Result<Index> {
    Index::build(g, order, &BuildOptions { bp_roots: t, ..Default::default() })
}
