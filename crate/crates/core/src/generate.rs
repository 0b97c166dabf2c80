//! Synthetic graph generators for tests and benchmarks.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{Direction, Graph, VertexId};

/// Uniform random graph with `n` vertices and `m` distinct edges (arcs when
/// `directed`). `m` is capped at the number of possible edges.
pub fn gnm(n: usize, m: usize, directed: bool, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let possible = if directed { n * n.saturating_sub(1) } else { n * n.saturating_sub(1) / 2 };
    let m = m.min(possible);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n as VertexId);
        let v = rng.gen_range(0..n as VertexId);
        if u == v {
            continue;
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Graph::from_edges(n, edges, directed)
}

/// Barabási–Albert preferential attachment: each new vertex links to
/// `attach` distinct existing vertices chosen with probability proportional
/// to degree. Starts from a clique on `attach + 1` vertices.
pub fn barabasi_albert(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attach = attach.max(1);
    let core = (attach + 1).min(n);
    let mut edges = Vec::with_capacity(n * attach);
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * attach);
    for u in 0..core as VertexId {
        for v in 0..u {
            edges.push((v, u));
            endpoints.extend([u, v]);
        }
    }
    let mut picked = Vec::with_capacity(attach);
    for v in core as VertexId..n as VertexId {
        picked.clear();
        while picked.len() < attach.min(v as usize) {
            let u = endpoints[rng.gen_range(0..endpoints.len())];
            if !picked.contains(&u) {
                picked.push(u);
            }
        }
        for &u in &picked {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    Graph::from_edges(n, edges, false)
}

/// Copy of `g` with integer weights drawn uniformly from `range`.
pub fn with_random_weights(g: &Graph, range: RangeInclusive<u32>, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(g.num_arcs());
    for u in 0..g.num_vertices() as VertexId {
        for &v in g.neighbors(u, Direction::Forward) {
            if g.is_directed() || u < v {
                edges.push((u, v, rng.gen_range(range.clone())));
            }
        }
    }
    Graph::from_weighted_edges(g.num_vertices(), edges, g.is_directed())
}
