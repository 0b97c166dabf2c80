//! Weighted graphs: pruned Dijkstra searches with 32-bit label distances.
//!
//! The prune test runs when a vertex is settled, since tentative distances
//! may still shrink before that.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexId};
use crate::label::{to_option, LabelBuf, LabelSet, UNREACHABLE};
use crate::order::VertexOrder;
use crate::pruned::BfsStats;
use crate::DistanceIndex;

/// Largest distance a weighted label may hold; keeps hub sums within 32 bits.
pub const MAX_WEIGHTED_DISTANCE: u32 = (u32::MAX >> 1) - 1;

/// Index over a weighted graph, directed or not. Undirected indices keep a
/// single label set.
#[derive(Clone, Debug)]
pub struct WeightedIndex {
    pub(crate) out: LabelSet<u32>,
    pub(crate) inn: Option<LabelSet<u32>>,
    pub(crate) order: VertexOrder,
    pub(crate) ids: Vec<u64>,
    pub(crate) num_arcs: u64,
    pub(crate) stats: Vec<BfsStats>,
}

impl PartialEq for WeightedIndex {
    fn eq(&self, other: &Self) -> bool {
        self.out == other.out
            && self.inn == other.inn
            && self.order.vertices() == other.order.vertices()
            && self.ids == other.ids
            && self.num_arcs == other.num_arcs
    }
}

struct DijkstraWorkspace {
    dist: Vec<u32>,
    settled: Vec<bool>,
    touched: Vec<VertexId>,
    heap: BinaryHeap<Reverse<(u32, VertexId)>>,
    root_row: Vec<u32>,
    loaded: Vec<u32>,
}

impl DijkstraWorkspace {
    fn new(n: usize) -> Self {
        DijkstraWorkspace {
            dist: vec![UNREACHABLE; n],
            settled: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
            root_row: vec![UNREACHABLE; n + 1],
            loaded: Vec::new(),
        }
    }

    fn load_root(&mut self, label: &LabelBuf<u32>) {
        for (&r, &d) in label.ranks.iter().zip(&label.dists) {
            self.root_row[r as usize] = d;
            self.loaded.push(r);
        }
    }

    fn unload_root(&mut self) {
        for r in self.loaded.drain(..) {
            self.root_row[r as usize] = UNREACHABLE;
        }
    }

    #[inline]
    fn root_query(&self, label: &LabelBuf<u32>) -> u32 {
        let mut best = UNREACHABLE;
        for (&r, &d) in label.ranks.iter().zip(&label.dists) {
            let td = self.root_row[r as usize];
            if td != UNREACHABLE {
                best = best.min(td + d);
            }
        }
        best
    }
}

fn pruned_dijkstra(
    g: &Graph,
    dir: Direction,
    root: VertexId,
    rank: u32,
    ws: &mut DijkstraWorkspace,
    targets: &mut [LabelBuf<u32>],
) -> Result<BfsStats> {
    let mut stats = BfsStats { rank, ..Default::default() };
    ws.dist[root as usize] = 0;
    ws.touched.push(root);
    ws.heap.push(Reverse((0, root)));
    let mut overflow = false;

    while let Some(Reverse((d, u))) = ws.heap.pop() {
        if ws.settled[u as usize] || d > ws.dist[u as usize] {
            continue;
        }
        ws.settled[u as usize] = true;
        if u != root && ws.root_query(&targets[u as usize]) <= d {
            continue;
        }
        targets[u as usize].push(rank, d);
        stats.labeled += 1;
        for (w, weight) in g.weighted_neighbors(u, dir) {
            let nd = d as u64 + weight as u64;
            if nd > MAX_WEIGHTED_DISTANCE as u64 {
                overflow = true;
                break;
            }
            let nd = nd as u32;
            let cur = ws.dist[w as usize];
            if nd < cur {
                if cur == UNREACHABLE {
                    ws.touched.push(w);
                }
                ws.dist[w as usize] = nd;
                ws.heap.push(Reverse((nd, w)));
            }
        }
        if overflow {
            break;
        }
    }

    ws.heap.clear();
    stats.visited = ws.touched.len() as u32;
    for v in ws.touched.drain(..) {
        ws.dist[v as usize] = UNREACHABLE;
        ws.settled[v as usize] = false;
        stats.resets += 1;
    }
    if overflow {
        return Err(Error::DistanceOverflow { root, limit: MAX_WEIGHTED_DISTANCE as u64 + 1 });
    }
    Ok(stats)
}

/// Builds an exact index for a weighted graph by pruned Dijkstra searches.
pub fn build_index_weighted(g: &Graph, order: VertexOrder) -> Result<WeightedIndex> {
    if order.len() != g.num_vertices() {
        return Err(Error::InvalidOrder("order does not match the graph".into()));
    }
    let n = g.num_vertices();
    let mut ws = DijkstraWorkspace::new(n);
    let mut out: Vec<LabelBuf<u32>> = vec![LabelBuf::default(); n];
    let mut stats = Vec::with_capacity(n);

    if !g.is_directed() {
        for rank in 0..n as u32 {
            let root = order.vertex_at(rank);
            ws.load_root(&out[root as usize]);
            let s = pruned_dijkstra(g, Direction::Forward, root, rank, &mut ws, &mut out);
            ws.unload_root();
            stats.push(s?);
        }
        return Ok(WeightedIndex {
            out: LabelSet::from_bufs(out),
            inn: None,
            order,
            ids: g.external_ids().to_vec(),
            num_arcs: g.num_arcs() as u64,
            stats,
        });
    }

    let mut inn: Vec<LabelBuf<u32>> = vec![LabelBuf::default(); n];
    for rank in 0..n as u32 {
        let root = order.vertex_at(rank);
        ws.load_root(&out[root as usize]);
        let fwd = pruned_dijkstra(g, Direction::Forward, root, rank, &mut ws, &mut inn);
        ws.unload_root();
        fwd?;
        ws.load_root(&inn[root as usize]);
        let rev = pruned_dijkstra(g, Direction::Reverse, root, rank, &mut ws, &mut out);
        ws.unload_root();
        stats.push(rev?);
    }
    Ok(WeightedIndex {
        out: LabelSet::from_bufs(out),
        inn: Some(LabelSet::from_bufs(inn)),
        order,
        ids: g.external_ids().to_vec(),
        num_arcs: g.num_arcs() as u64,
        stats,
    })
}

impl WeightedIndex {
    pub fn num_vertices(&self) -> usize {
        self.out.num_vertices()
    }

    pub fn num_arcs(&self) -> u64 {
        self.num_arcs
    }

    pub fn is_directed(&self) -> bool {
        self.inn.is_some()
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    /// Labels of undirected indices, `out` labels of directed ones.
    pub fn labels(&self) -> &LabelSet<u32> {
        &self.out
    }

    pub fn in_labels(&self) -> Option<&LabelSet<u32>> {
        self.inn.as_ref()
    }

    /// Per-rank counters (the reverse search for directed indices).
    pub fn build_stats(&self) -> &[BfsStats] {
        &self.stats
    }

    pub fn avg_label_size(&self) -> f64 {
        let total = self.out.total_entries() + self.inn.as_ref().map_or(0, |l| l.total_entries());
        total as f64 / self.num_vertices().max(1) as f64
    }

    #[inline]
    pub fn query(&self, s: VertexId, t: VertexId) -> Option<u32> {
        to_option(self.out.query_with(s, self.inn.as_ref().unwrap_or(&self.out), t))
    }
}

impl DistanceIndex for WeightedIndex {
    fn num_vertices(&self) -> usize {
        WeightedIndex::num_vertices(self)
    }

    fn distance(&self, s: VertexId, t: VertexId) -> Option<u32> {
        self.query(s, t)
    }

    fn external_ids(&self) -> &[u64] {
        &self.ids
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::order::{order_degree, order_random};
    use crate::pruned::build_index;

    #[test]
    fn detour_beats_direct_edge() {
        let g = Graph::from_weighted_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)], false).unwrap();
        let idx = build_index_weighted(&g, order_degree(&g)).unwrap();
        assert_eq!(idx.query(0, 2), Some(2));
    }

    #[test]
    fn unit_weights_reproduce_unweighted_labels() {
        use rand::{Rng, SeedableRng};
        for seed in 0..20u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(5..60u32);
            let m = rng.gen_range(0..3 * n);
            let edges: Vec<_> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let plain = Graph::from_edges(n as usize, edges.iter().copied(), false).unwrap();
            let weighted =
                Graph::from_weighted_edges(n as usize, edges.iter().map(|&(u, v)| (u, v, 1)), false)
                    .unwrap();
            let order = order_random(&plain, seed);
            let a = build_index(&plain, order.clone()).unwrap();
            let b = build_index_weighted(&weighted, order).unwrap();
            for v in 0..n {
                let la: Vec<_> = a.labels().entries(v).map(|(r, d)| (r, d as u32)).collect();
                let lb: Vec<_> = b.labels().entries(v).collect();
                assert_eq!(la, lb, "seed {seed} vertex {v}");
            }
        }
    }

    #[test]
    fn tied_shortest_paths_and_zero_weights() {
        // two equal 0-3 routes, and a zero-weight edge 3-4
        let g = Graph::from_weighted_edges(
            5,
            [(0, 1, 2), (1, 3, 2), (0, 2, 1), (2, 3, 3), (3, 4, 0)],
            false,
        )
        .unwrap();
        let idx = build_index_weighted(&g, order_degree(&g)).unwrap();
        for s in 0..5 {
            let row = oracle::dijkstra(&g, s, Direction::Forward);
            for t in 0..5 {
                assert_eq!(idx.query(s, t), row[t as usize]);
            }
        }
    }

    #[test]
    fn directed_weighted() {
        let g = Graph::from_weighted_edges(3, [(0, 1, 4), (1, 2, 1), (2, 0, 2), (0, 2, 9)], true)
            .unwrap();
        let idx = build_index_weighted(&g, order_degree(&g)).unwrap();
        assert_eq!(idx.query(0, 2), Some(5));
        assert_eq!(idx.query(2, 1), Some(6));
        assert!(idx.is_directed());
    }

    #[test]
    fn huge_weights_overflow() {
        let g = Graph::from_weighted_edges(3, [(0, 1, u32::MAX >> 1), (1, 2, 5)], false).unwrap();
        assert!(matches!(
            build_index_weighted(&g, order_degree(&g)),
            Err(Error::DistanceOverflow { .. })
        ));
    }
}
