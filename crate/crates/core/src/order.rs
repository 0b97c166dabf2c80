//! Vertex orderings that drive label construction.
//!
//! The rank of a vertex is its position in the construction order. Vertices
//! that lie on many shortest paths should come first; the strategies here
//! approximate that cheaply.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexId};
use crate::oracle;

pub const DEFAULT_CLOSENESS_SAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderStrategy {
    Degree,
    Random { seed: u64 },
    Closeness { samples: usize, seed: u64 },
    /// Supplied by the caller or restored from an index file.
    Explicit,
}

impl fmt::Display for OrderStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderStrategy::Degree => write!(f, "degree"),
            OrderStrategy::Random { seed } => write!(f, "random(seed={seed})"),
            OrderStrategy::Closeness { samples, seed } => {
                write!(f, "closeness(samples={samples}, seed={seed})")
            }
            OrderStrategy::Explicit => write!(f, "explicit"),
        }
    }
}

/// A permutation of the vertices: `vertex_at[rank_of[v]] == v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    rank_of: Vec<u32>,
    vertex_at: Vec<VertexId>,
    strategy: OrderStrategy,
}

impl VertexOrder {
    /// Builds an order from the rank → vertex sequence, validating that it is
    /// a permutation of `0..len`.
    pub fn from_vertex_at(vertex_at: Vec<VertexId>, strategy: OrderStrategy) -> Result<Self> {
        let n = vertex_at.len();
        let mut rank_of = vec![u32::MAX; n];
        for (rank, &v) in vertex_at.iter().enumerate() {
            let slot = rank_of
                .get_mut(v as usize)
                .ok_or_else(|| Error::InvalidOrder(format!("vertex {v} out of range (n = {n})")))?;
            if *slot != u32::MAX {
                return Err(Error::InvalidOrder(format!("vertex {v} appears twice")));
            }
            *slot = rank as u32;
        }
        Ok(VertexOrder { rank_of, vertex_at, strategy })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder {
            rank_of: (0..n as u32).collect(),
            vertex_at: (0..n as VertexId).collect(),
            strategy: OrderStrategy::Explicit,
        }
    }

    pub fn len(&self) -> usize {
        self.vertex_at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_at.is_empty()
    }

    #[inline]
    pub fn rank_of(&self, v: VertexId) -> u32 {
        self.rank_of[v as usize]
    }

    #[inline]
    pub fn vertex_at(&self, rank: u32) -> VertexId {
        self.vertex_at[rank as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank_of
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertex_at
    }

    pub fn strategy(&self) -> OrderStrategy {
        self.strategy
    }

    /// Computes the order for `strategy` on `g`.
    pub fn compute(g: &Graph, strategy: OrderStrategy) -> Result<Self> {
        Ok(match strategy {
            OrderStrategy::Degree => order_degree(g),
            OrderStrategy::Random { seed } => order_random(g, seed),
            OrderStrategy::Closeness { samples, seed } => order_closeness(g, samples, seed)?,
            OrderStrategy::Explicit => {
                return Err(Error::InvalidOrder("explicit orders cannot be computed".into()))
            }
        })
    }
}

pub fn order_random(g: &Graph, seed: u64) -> VertexOrder {
    let mut vertex_at: Vec<VertexId> = (0..g.num_vertices() as VertexId).collect();
    vertex_at.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    VertexOrder::from_vertex_at(vertex_at, OrderStrategy::Random { seed }).unwrap()
}

/// Highest degree first, ties by ascending id.
pub fn order_degree(g: &Graph) -> VertexOrder {
    let mut vertex_at: Vec<VertexId> = (0..g.num_vertices() as VertexId).collect();
    vertex_at.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    VertexOrder::from_vertex_at(vertex_at, OrderStrategy::Degree).unwrap()
}

/// Approximate closeness: sum of hop distances to `samples` random vertices,
/// smallest sum first. Unreachable samples count as distance `n`.
pub fn order_closeness(g: &Graph, samples: usize, seed: u64) -> Result<VertexOrder> {
    if samples == 0 {
        return Err(Error::InvalidOrder("closeness ordering needs at least one sample".into()));
    }
    let n = g.num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, n, samples.min(n));
    let mut score = vec![0u64; n];
    for s in picked.iter() {
        // distances from each vertex towards the sample
        let row = oracle::bfs_hops(g, s as VertexId, Direction::Reverse);
        for (acc, d) in score.iter_mut().zip(&row) {
            *acc += d.map_or(n as u64, u64::from);
        }
    }
    let mut vertex_at: Vec<VertexId> = (0..n as VertexId).collect();
    vertex_at.sort_by_key(|&v| (score[v as usize], v));
    VertexOrder::from_vertex_at(vertex_at, OrderStrategy::Closeness { samples, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn star() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)], false).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)], false).unwrap()
    }

    fn assert_permutation(o: &VertexOrder) {
        for r in 0..o.len() as u32 {
            assert_eq!(o.rank_of(o.vertex_at(r)), r);
        }
    }

    #[test]
    fn random_single_vertex_is_identity() {
        let g = Graph::from_edges(1, [], false).unwrap();
        assert_eq!(order_random(&g, 7).vertices(), &[0]);
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let g = Graph::from_edges(5, [(0, 1)], false).unwrap();
        assert_eq!(order_random(&g, 3), order_random(&g, 3));
        let (a, b) = (order_random(&g, 1), order_random(&g, 2));
        assert_permutation(&a);
        assert_permutation(&b);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(order_degree(&star()).vertex_at(0), 0);
        let cycle = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], false).unwrap();
        assert_eq!(order_degree(&cycle).vertices(), &[0, 1, 2, 3]);
        assert_eq!(order_degree(&path3()).vertex_at(0), 1);
    }

    #[test]
    fn directed_degree_sums_in_and_out() {
        // vertex 2 has in-degree 2 and out-degree 1
        let g = Graph::from_edges(4, [(0, 2), (1, 2), (2, 3)], true).unwrap();
        assert_eq!(order_degree(&g).vertex_at(0), 2);
    }

    #[test]
    fn closeness_examples() {
        let o = order_closeness(&star(), 5, 0).unwrap();
        assert_eq!(o.vertex_at(0), 0);
        let single = Graph::from_edges(1, [], false).unwrap();
        assert_eq!(order_closeness(&single, 3, 0).unwrap().vertices(), &[0]);
        // sampling every vertex: scores 3, 2, 3
        let o = order_closeness(&path3(), 3, 0).unwrap();
        assert_eq!(o.vertices(), &[1, 0, 2]);
        assert!(order_closeness(&star(), 0, 0).is_err());
    }

    #[test]
    fn closeness_tie_break_on_endpoint_samples() {
        // With samples {0, 2} on the path every vertex scores 2.
        let g = path3();
        let (n, mut seed) = (g.num_vertices(), 0);
        loop {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = rand::seq::index::sample(&mut rng, n, 2).into_vec();
            picked.sort();
            if picked == [0, 2] {
                break;
            }
            seed += 1;
        }
        assert_eq!(order_closeness(&g, 2, seed).unwrap().vertices(), &[0, 1, 2]);
    }

    #[test]
    fn disconnected_closeness_puts_small_component_last() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)], false).unwrap();
        let o = order_closeness(&g, 5, 1).unwrap();
        assert_eq!(o.vertex_at(0), 1);
    }

    #[test]
    fn from_vertex_at_rejects_non_permutations() {
        assert!(VertexOrder::from_vertex_at(vec![0, 0], OrderStrategy::Explicit).is_err());
        assert!(VertexOrder::from_vertex_at(vec![0, 2], OrderStrategy::Explicit).is_err());
    }

    proptest! {
        #[test]
        fn every_strategy_yields_a_permutation(
            n in 1usize..40,
            edges in proptest::collection::vec((0u32..40, 0u32..40), 0..80),
            seed in any::<u64>(),
        ) {
            let edges: Vec<_> = edges.into_iter()
                .map(|(u, v)| (u % n as u32, v % n as u32))
                .collect();
            let g = Graph::from_edges(n, edges, false).unwrap();
            let orders = [
                order_degree(&g),
                order_random(&g, seed),
                order_closeness(&g, 4, seed).unwrap(),
            ];
            for o in &orders {
                assert_permutation(o);
            }
            let deg = &orders[0];
            for r in 1..n as u32 {
                prop_assert!(g.degree(deg.vertex_at(r - 1)) >= g.degree(deg.vertex_at(r)));
            }
        }
    }
}
