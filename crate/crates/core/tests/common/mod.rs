//! Helpers shared by the integration tests.
#![allow(dead_code)]

use pll_core::generate::{barabasi_albert, gnm};
use pll_core::oracle::{bfs_hops, dijkstra};
use pll_core::{Direction, DistanceIndex, Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph with roughly `avg_degree` edges per vertex.
pub fn er(n: usize, avg_degree: f64, seed: u64) -> Graph {
    gnm(n, (n as f64 * avg_degree / 2.0) as usize, false, seed).unwrap()
}

pub fn ba(n: usize, attach: usize, seed: u64) -> Graph {
    barabasi_albert(n, attach, seed).unwrap()
}

/// Random spanning tree plus `extra` random edges; always connected.
pub fn connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges: Vec<(VertexId, VertexId)> =
        (1..n as VertexId).map(|v| (r.gen_range(0..v), v)).collect();
    for _ in 0..extra {
        edges.push((r.gen_range(0..n as VertexId), r.gen_range(0..n as VertexId)));
    }
    Graph::from_edges(n, edges, false).unwrap()
}

/// Ground-truth row from `s`: BFS or Dijkstra depending on the graph.
pub fn oracle_row(g: &Graph, s: VertexId) -> Vec<Option<u32>> {
    if g.is_weighted() {
        dijkstra(g, s, Direction::Forward)
    } else {
        bfs_hops(g, s, Direction::Forward)
    }
}

/// All-pairs comparison against the oracle; returns the number of mismatches.
pub fn all_pairs_mismatches<I: DistanceIndex + ?Sized>(g: &Graph, index: &I) -> u64 {
    let mut bad = 0;
    for s in 0..g.num_vertices() as VertexId {
        let row = oracle_row(g, s);
        for (t, &want) in row.iter().enumerate() {
            if index.distance(s, t as VertexId) != want {
                bad += 1;
            }
        }
    }
    bad
}

/// True if `path` walks edges of `g` from `s` to `t` in exactly `d` steps
/// (or weight `d` on weighted graphs).
pub fn is_valid_path(g: &Graph, path: &[VertexId], s: VertexId, t: VertexId, d: u32) -> bool {
    if path.first() != Some(&s) || path.last() != Some(&t) {
        return false;
    }
    let mut total = 0u64;
    for w in path.windows(2) {
        match g.weighted_neighbors(w[0], Direction::Forward).find(|&(u, _)| u == w[1]) {
            Some((_, weight)) => total += weight as u64,
            None => return false,
        }
    }
    total == d as u64
}
