//! Pruned breadth-first label construction and the distance query kernel.
//!
//! Vertices are processed in rank order. The search from the `k`-th vertex
//! labels every vertex it reaches with `(k, distance)` unless the labels built
//! so far already answer that distance, in which case the vertex is pruned and
//! its edges are not followed. The result is a 2-hop cover: every pair shares
//! a hub on one of its shortest paths.

use crate::bitparallel::{self, BpEntry, BpLabels};
use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexId};
use crate::label::{merge_min, to_option, LabelBuf, LabelSet, UNREACHABLE};
use crate::order::VertexOrder;
use crate::DistanceIndex;

/// Distance value meaning "unreached" in 8-bit labels and workspaces.
pub const INF8: u8 = u8::MAX;

/// Parent id stored for a hub's own entry and for sentinels.
pub const NO_PARENT: u32 = u32::MAX;

/// Counters for one pruned search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BfsStats {
    pub rank: u32,
    /// Vertices that were enqueued (reached), pruned or not.
    pub visited: u32,
    /// Vertices that received a new label entry.
    pub labeled: u32,
    /// Workspace cells restored to their initial value after the search.
    pub resets: u32,
}

/// Scratch arrays reused across searches.
///
/// `dist` and `root_row` hold `INF8` everywhere between searches. Each search
/// only restores the cells it touched, so no search after the first pays
/// `O(n)` initialization.
#[derive(Clone, Debug)]
pub struct Workspace {
    dist: Vec<u8>,
    root_row: Vec<u8>,
    loaded: Vec<u32>,
    queue: Vec<VertexId>,
    parent: Vec<VertexId>,
}

impl Workspace {
    pub fn new(n: usize) -> Self {
        Workspace {
            dist: vec![INF8; n],
            root_row: vec![INF8; n + 1],
            loaded: Vec::new(),
            queue: Vec::with_capacity(n),
            parent: vec![NO_PARENT; n],
        }
    }

    /// Scatters a root label into the rank-indexed row used by [`root_query`].
    pub fn load_root(&mut self, ranks: &[u32], dists: &[u8]) {
        debug_assert!(self.loaded.is_empty());
        for (&r, &d) in ranks.iter().zip(dists) {
            self.root_row[r as usize] = d;
            self.loaded.push(r);
        }
    }

    pub fn unload_root(&mut self) {
        for r in self.loaded.drain(..) {
            self.root_row[r as usize] = INF8;
        }
    }

    pub fn root_row(&self) -> &[u8] {
        &self.root_row
    }

    fn is_clean(&self) -> bool {
        self.loaded.is_empty()
            && self.dist.iter().all(|&d| d == INF8)
            && self.root_row.iter().all(|&d| d == INF8)
    }
}

/// Distance between the loaded root and a vertex with the given label, using
/// the root's row `root_row[rank] = dist`. Runs in time linear in the label.
#[inline]
pub fn root_query(root_row: &[u8], ranks: &[u32], dists: &[u8]) -> Option<u32> {
    to_option(root_query_raw(root_row, ranks, dists))
}

#[inline]
fn root_query_raw(root_row: &[u8], ranks: &[u32], dists: &[u8]) -> u32 {
    let mut best = UNREACHABLE;
    for (&r, &d) in ranks.iter().zip(dists) {
        let td = root_row[r as usize];
        if td != INF8 {
            best = best.min(td as u32 + d as u32);
        }
    }
    best
}

/// Minimum of the bit-parallel answers over roots shared by two labels.
#[inline]
pub(crate) fn bp_min(a: &[BpEntry], b: &[BpEntry]) -> u32 {
    let (mut i, mut j) = (0, 0);
    let mut best = UNREACHABLE;
    while i < a.len() && j < b.len() {
        match a[i].root.cmp(&b[j].root) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                best = best.min(bitparallel::bp_query(&a[i], &b[j]));
                i += 1;
                j += 1;
            }
        }
    }
    best
}

/// One pruned BFS from `root` (rank `rank`) along `dir`.
///
/// The caller loads the root's label into the workspace first. Reached
/// vertices whose distance is already answered by `targets` (and `bp`, when
/// given) are pruned; the rest receive `(rank, distance)` in `targets`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn pruned_bfs_kernel(
    g: &Graph,
    dir: Direction,
    root: VertexId,
    rank: u32,
    ws: &mut Workspace,
    targets: &mut [LabelBuf<u8>],
    bp: Option<&BpLabels>,
    mut parents: Option<&mut [Vec<u32>]>,
) -> Result<BfsStats> {
    let mut stats = BfsStats { rank, ..Default::default() };
    let root_bp = bp.map(|bp| bp.entries(root));
    ws.queue.clear();
    ws.queue.push(root);
    ws.dist[root as usize] = 0;
    ws.parent[root as usize] = NO_PARENT;

    let mut overflow = false;
    let mut head = 0;
    'bfs: while head < ws.queue.len() {
        let u = ws.queue[head];
        head += 1;
        let du = ws.dist[u as usize];

        if u != root {
            if let (Some(bp), Some(root_bp)) = (bp, root_bp) {
                if bp_min(root_bp, bp.entries(u)) <= du as u32 {
                    continue;
                }
            }
            let label = &targets[u as usize];
            if root_query_raw(&ws.root_row, &label.ranks, &label.dists) <= du as u32 {
                continue;
            }
        } else {
            // Earlier hubs certify the root only via a round trip, so the
            // root is never pruned by normal labels. Bit-parallel labels can
            // answer 0 for a vertex used as a root or neighbor; the root is
            // labeled regardless so every vertex keeps its self entry.
            let label = &targets[u as usize];
            debug_assert!(root_query_raw(&ws.root_row, &label.ranks, &label.dists) >= 2);
        }

        targets[u as usize].push(rank, du);
        if let Some(parents) = parents.as_deref_mut() {
            parents[u as usize].push(ws.parent[u as usize]);
        }
        stats.labeled += 1;

        for &w in g.neighbors(u, dir) {
            if ws.dist[w as usize] == INF8 {
                if du + 1 == INF8 {
                    overflow = true;
                    break 'bfs;
                }
                ws.dist[w as usize] = du + 1;
                ws.parent[w as usize] = u;
                ws.queue.push(w);
            }
        }
    }

    stats.visited = ws.queue.len() as u32;
    for &v in &ws.queue {
        ws.dist[v as usize] = INF8;
        stats.resets += 1;
    }
    if overflow {
        return Err(Error::DistanceOverflow { root, limit: INF8 as u64 });
    }
    Ok(stats)
}

/// Options for [`Index::build`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Number of bit-parallel searches run before pruned labeling.
    pub bp_roots: usize,
    /// Neighbor-set width of each bit-parallel search, at most 64.
    pub bp_width: usize,
    /// Store a parent per label entry for path reconstruction.
    pub record_paths: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { bp_roots: 0, bp_width: bitparallel::BP_WIDTH, record_paths: false }
    }
}

/// Bit-parallel root count used when none is given: 16 below ten million
/// arc slots, 64 above.
pub fn default_bp_roots(g: &Graph) -> usize {
    if g.num_arcs() < 10_000_000 {
        16
    } else {
        64
    }
}

/// Incremental construction of an undirected, unweighted [`Index`].
///
/// Each call to [`IndexBuilder::pruned_bfs`] processes the next rank, so the
/// partially built index can be inspected between searches.
pub struct IndexBuilder<'g> {
    graph: &'g Graph,
    order: VertexOrder,
    bp: BpLabels,
    bp_width: usize,
    labels: Vec<LabelBuf<u8>>,
    parents: Option<Vec<Vec<u32>>>,
    ws: Workspace,
    next: u32,
    stats: Vec<BfsStats>,
}

impl<'g> IndexBuilder<'g> {
    pub fn new(graph: &'g Graph, order: VertexOrder) -> Result<Self> {
        if graph.is_weighted() || graph.is_directed() {
            return Err(Error::Unsupported(
                "pruned BFS labeling needs an undirected, unweighted graph".into(),
            ));
        }
        if order.len() != graph.num_vertices() {
            return Err(Error::InvalidOrder(format!(
                "order covers {} vertices, graph has {}",
                order.len(),
                graph.num_vertices()
            )));
        }
        let n = graph.num_vertices();
        Ok(IndexBuilder {
            graph,
            order,
            bp: BpLabels::empty(n),
            bp_width: bitparallel::BP_WIDTH,
            labels: vec![LabelBuf::default(); n],
            parents: None,
            ws: Workspace::new(n),
            next: 0,
            stats: Vec::with_capacity(n),
        })
    }

    /// Uses precomputed bit-parallel labels for pruning and querying.
    pub fn with_bit_parallel(mut self, bp: BpLabels, width: usize) -> Self {
        assert_eq!(bp.num_vertices(), self.graph.num_vertices());
        self.bp = bp;
        self.bp_width = width;
        self
    }

    pub fn record_paths(mut self) -> Result<Self> {
        if self.bp.num_roots() > 0 {
            return Err(Error::Unsupported(
                "path reconstruction cannot be combined with bit-parallel labels".into(),
            ));
        }
        self.parents = Some(vec![Vec::new(); self.graph.num_vertices()]);
        Ok(self)
    }

    /// Runs the pruned BFS for the next rank. Returns `None` once every
    /// vertex has been processed.
    pub fn pruned_bfs(&mut self) -> Result<Option<BfsStats>> {
        if self.next as usize >= self.graph.num_vertices() {
            return Ok(None);
        }
        let rank = self.next;
        let root = self.order.vertex_at(rank);
        let root_label = &self.labels[root as usize];
        self.ws.load_root(&root_label.ranks, &root_label.dists);
        let bp = (self.bp.num_roots() > 0).then_some(&self.bp);
        let result = pruned_bfs_kernel(
            self.graph,
            Direction::Forward,
            root,
            rank,
            &mut self.ws,
            &mut self.labels,
            bp,
            self.parents.as_deref_mut(),
        );
        self.ws.unload_root();
        let stats = result?;
        self.next += 1;
        self.stats.push(stats);
        Ok(Some(stats))
    }

    /// Number of ranks processed so far.
    pub fn processed(&self) -> usize {
        self.next as usize
    }

    pub fn stats(&self) -> &[BfsStats] {
        &self.stats
    }

    pub fn workspace(&self) -> &Workspace {
        &self.ws
    }

    /// Current label of `v` as `(ranks, dists)`, no sentinel.
    pub fn label(&self, v: VertexId) -> (&[u32], &[u8]) {
        let l = &self.labels[v as usize];
        (&l.ranks, &l.dists)
    }

    /// Distance answered by the labels built so far.
    pub fn query(&self, s: VertexId, t: VertexId) -> Option<u32> {
        let (a, b) = (&self.labels[s as usize], &self.labels[t as usize]);
        let normal = merge_min(&a.ranks, &a.dists, &b.ranks, &b.dists);
        to_option(normal.min(bp_min(self.bp.entries(s), self.bp.entries(t))))
    }

    /// Processes every remaining rank and returns the index.
    pub fn run(mut self) -> Result<Index> {
        while self.pruned_bfs()?.is_some() {}
        Ok(self.finish())
    }

    /// Packs the labels built so far into an index.
    pub fn finish(self) -> Index {
        debug_assert!(self.ws.is_clean());
        let parents = self.parents.map(|ps| {
            let mut flat = Vec::new();
            for p in ps {
                flat.extend_from_slice(&p);
                flat.push(NO_PARENT);
            }
            flat
        });
        Index {
            labels: LabelSet::from_bufs(self.labels),
            bp: self.bp,
            bp_width: self.bp_width,
            order: self.order,
            parents,
            ids: self.graph.external_ids().to_vec(),
            num_arcs: self.graph.num_arcs() as u64,
            stats: self.stats,
        }
    }
}

/// Exact distance index for an undirected, unweighted graph.
#[derive(Clone, Debug)]
pub struct Index {
    pub(crate) labels: LabelSet<u8>,
    pub(crate) bp: BpLabels,
    pub(crate) bp_width: usize,
    pub(crate) order: VertexOrder,
    pub(crate) parents: Option<Vec<u32>>,
    pub(crate) ids: Vec<u64>,
    pub(crate) num_arcs: u64,
    pub(crate) stats: Vec<BfsStats>,
}

impl PartialEq for Index {
    /// Compares the stored artifact; construction statistics are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.bp == other.bp
            && self.bp_width == other.bp_width
            && self.order.vertices() == other.order.vertices()
            && self.parents == other.parents
            && self.ids == other.ids
            && self.num_arcs == other.num_arcs
    }
}

impl Index {
    pub fn build(g: &Graph, order: VertexOrder, opts: &BuildOptions) -> Result<Index> {
        let mut builder = IndexBuilder::new(g, order)?;
        if opts.bp_roots > 0 {
            if opts.record_paths {
                return Err(Error::Unsupported(
                    "path reconstruction cannot be combined with bit-parallel labels".into(),
                ));
            }
            let roots = bitparallel::select_bp_roots(g, &builder.order, opts.bp_roots, opts.bp_width)?;
            let bp = BpLabels::build(g, &builder.order, &roots)?;
            builder = builder.with_bit_parallel(bp, opts.bp_width);
        } else {
            builder.bp_width = opts.bp_width;
        }
        if opts.record_paths {
            builder = builder.record_paths()?;
        }
        builder.run()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.num_vertices()
    }

    pub fn num_arcs(&self) -> u64 {
        self.num_arcs
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn labels(&self) -> &LabelSet<u8> {
        &self.labels
    }

    pub fn bp_labels(&self) -> &BpLabels {
        &self.bp
    }

    /// Number of bit-parallel roots actually used.
    pub fn bp_roots(&self) -> usize {
        self.bp.num_roots()
    }

    pub fn bp_width(&self) -> usize {
        self.bp_width
    }

    pub fn has_paths(&self) -> bool {
        self.parents.is_some()
    }

    pub fn external_ids(&self) -> &[u64] {
        &self.ids
    }

    /// Per-search counters from construction; empty for loaded indices.
    pub fn build_stats(&self) -> &[BfsStats] {
        &self.stats
    }

    /// Average normal label entries per vertex, sentinels excluded.
    pub fn avg_label_size(&self) -> f64 {
        self.labels.total_entries() as f64 / self.num_vertices().max(1) as f64
    }

    pub fn avg_bp_label_size(&self) -> f64 {
        self.bp.total_entries() as f64 / self.num_vertices().max(1) as f64
    }

    /// Exact distance, `None` when `t` is unreachable from `s`.
    /// Panics if either vertex is out of range.
    #[inline]
    pub fn query(&self, s: VertexId, t: VertexId) -> Option<u32> {
        to_option(self.query_raw(s, t))
    }

    pub fn checked_query(&self, s: VertexId, t: VertexId) -> Result<Option<u32>> {
        for v in [s, t] {
            if v as usize >= self.num_vertices() {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n: self.num_vertices() });
            }
        }
        Ok(self.query(s, t))
    }

    #[inline]
    pub(crate) fn query_raw(&self, s: VertexId, t: VertexId) -> u32 {
        let bp = if self.bp.num_roots() > 0 {
            bp_min(self.bp.entries(s), self.bp.entries(t))
        } else {
            UNREACHABLE
        };
        bp.min(self.labels.query_with(s, &self.labels, t))
    }

    /// Distance using only the normal-label hubs of rank `< k` (bit-parallel
    /// labels ignored): the answer of the index after `k` pruned searches.
    pub fn query_prefix(&self, s: VertexId, t: VertexId, k: u32) -> Option<u32> {
        to_option(self.labels.query_prefix_with(s, &self.labels, t, k))
    }

    /// Copy with the `pos`-th normal entry of `v` deleted.
    pub fn without_entry(&self, v: VertexId, pos: usize) -> Index {
        let mut out = self.clone();
        out.labels = self.labels.without_entry(v, pos);
        if let Some(parents) = &mut out.parents {
            parents.remove(self.labels.offsets()[v as usize] + pos);
        }
        out
    }

    pub(crate) fn parent_slice(&self, v: VertexId) -> Option<&[u32]> {
        let offsets = self.labels.offsets();
        self.parents
            .as_ref()
            .map(|p| &p[offsets[v as usize]..offsets[v as usize + 1]])
    }

    pub fn parents(&self) -> Option<&[u32]> {
        self.parents.as_deref()
    }
}

impl DistanceIndex for Index {
    fn num_vertices(&self) -> usize {
        Index::num_vertices(self)
    }

    fn distance(&self, s: VertexId, t: VertexId) -> Option<u32> {
        self.query(s, t)
    }

    fn external_ids(&self) -> &[u64] {
        &self.ids
    }
}

/// Pruned landmark labeling without bit-parallel labels.
pub fn build_index(g: &Graph, order: VertexOrder) -> Result<Index> {
    IndexBuilder::new(g, order)?.run()
}

pub fn query_distance(index: &Index, s: VertexId, t: VertexId) -> Result<Option<u32>> {
    index.checked_query(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::order::{order_degree, order_random, OrderStrategy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn star() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)], false).unwrap()
    }

    fn label_of(b: &IndexBuilder, v: VertexId) -> Vec<(u32, u8)> {
        let (r, d) = b.label(v);
        r.iter().copied().zip(d.iter().copied()).collect()
    }

    #[test]
    fn first_search_never_prunes() {
        let g = star();
        let mut b = IndexBuilder::new(&g, order_degree(&g)).unwrap();
        let s = b.pruned_bfs().unwrap().unwrap();
        assert_eq!((s.visited, s.labeled), (5, 5));
        assert_eq!(label_of(&b, 0), vec![(0, 0)]);
        for leaf in 1..5 {
            assert_eq!(label_of(&b, leaf), vec![(0, 1)]);
        }
    }

    #[test]
    fn second_search_from_a_leaf_prunes_the_center() {
        let g = star();
        let mut b = IndexBuilder::new(&g, order_degree(&g)).unwrap();
        b.pruned_bfs().unwrap();
        let s = b.pruned_bfs().unwrap().unwrap();
        // root labeled, center reached and pruned, nothing else reached
        assert_eq!((s.visited, s.labeled), (2, 1));
        assert_eq!(label_of(&b, 1), vec![(0, 1), (1, 0)]);
        assert_eq!(label_of(&b, 0), vec![(0, 0)]);
    }

    #[test]
    fn pruned_vertex_edges_are_not_traversed() {
        // 0 - 1 - 2 - 3 with ranks 0:1, 1:0 ... the second search starts at
        // vertex 0 and reaches 1 at distance 1, which hub 1 already answers,
        // so 2 and 3 are never reached.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)], false).unwrap();
        let order = VertexOrder::from_vertex_at(vec![1, 0, 2, 3], OrderStrategy::Explicit).unwrap();
        let mut b = IndexBuilder::new(&g, order).unwrap();
        b.pruned_bfs().unwrap();
        let s = b.pruned_bfs().unwrap().unwrap();
        assert_eq!(s.visited, 2);
        assert_eq!(s.labeled, 1);
    }

    #[test]
    fn path_three_labels() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)], false).unwrap();
        let idx = build_index(&g, order_degree(&g)).unwrap();
        assert_eq!(idx.order().vertices(), &[1, 0, 2]);
        let entries = |v| idx.labels().entries(v).collect::<Vec<_>>();
        assert_eq!(entries(1), vec![(0, 0)]);
        assert_eq!(entries(0), vec![(0, 1), (1, 0)]);
        assert_eq!(entries(2), vec![(0, 1), (2, 0)]);
        assert!((idx.avg_label_size() - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_graphs() {
        let one = Graph::from_edges(1, [], false).unwrap();
        let idx = build_index(&one, order_degree(&one)).unwrap();
        assert_eq!(idx.labels().entries(0).collect::<Vec<_>>(), vec![(0, 0)]);
        assert_eq!(idx.query(0, 0), Some(0));

        let two = Graph::from_edges(2, [], false).unwrap();
        let idx = build_index(&two, order_degree(&two)).unwrap();
        assert_eq!(idx.labels().len(0), 1);
        assert_eq!(idx.labels().len(1), 1);
        assert_eq!(idx.query(0, 1), None);
    }

    #[test]
    fn star_queries() {
        let g = star();
        let idx = build_index(&g, order_degree(&g)).unwrap();
        assert_eq!(idx.query(1, 2), Some(2));
        assert_eq!(idx.query(3, 3), Some(0));
        assert!((idx.avg_label_size() - 1.8).abs() < 1e-12);
        assert!(matches!(idx.checked_query(0, 5), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn root_query_examples() {
        let mut row = vec![INF8; 4];
        assert_eq!(root_query(&row, &[2], &[0]), None);
        row[0] = 1;
        assert_eq!(root_query(&row, &[0, 2], &[1, 0]), Some(2));
    }

    #[test]
    fn root_query_matches_merge_join() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 120;
        let edges: Vec<_> = (0..300).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let g = Graph::from_edges(n as usize, edges, false).unwrap();
        let mut b = IndexBuilder::new(&g, order_random(&g, 5)).unwrap();
        let mut checked = 0;
        while checked < 1000 {
            if b.pruned_bfs().unwrap().is_none() {
                b = IndexBuilder::new(&g, order_random(&g, checked as u64)).unwrap();
                continue;
            }
            for _ in 0..25 {
                let (root, u) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let (rr, rd) = b.label(root);
                let mut ws = Workspace::new(n as usize);
                ws.load_root(rr, rd);
                let (ur, ud) = b.label(u);
                assert_eq!(root_query(ws.root_row(), ur, ud), b.query(root, u));
                checked += 1;
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let n = 300;
        let g = Graph::from_edges(n, (0..n as u32 - 1).map(|i| (i, i + 1)), false).unwrap();
        let err = build_index(&g, VertexOrder::identity(n)).unwrap_err();
        assert!(matches!(err, Error::DistanceOverflow { root: 0, .. }));
    }

    #[test]
    fn weighted_and_directed_graphs_are_rejected() {
        let g = Graph::from_edges(2, [(0, 1)], true).unwrap();
        assert!(build_index(&g, VertexOrder::identity(2)).is_err());
    }

    #[test]
    fn labels_only_grow_and_resets_match_visits() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 200;
        let edges: Vec<_> = (0..500).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let g = Graph::from_edges(n as usize, edges, false).unwrap();
        let mut b = IndexBuilder::new(&g, order_degree(&g)).unwrap();
        let mut prev: Vec<Vec<(u32, u8)>> = (0..n).map(|v| label_of(&b, v)).collect();
        while let Some(s) = b.pruned_bfs().unwrap() {
            assert_eq!(s.resets, s.visited);
            for v in 0..n {
                let cur = label_of(&b, v);
                assert!(cur.starts_with(&prev[v as usize]));
                prev[v as usize] = cur;
            }
        }
        let idx = b.finish();
        for s in 0..n {
            let row = oracle::bfs_hops(&g, s, Direction::Forward);
            for t in 0..n {
                assert_eq!(idx.query(s, t), row[t as usize]);
            }
        }
    }
}
