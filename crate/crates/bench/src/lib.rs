//! Fixtures shared by the criterion benches.

use pll_core::generate::{barabasi_albert, gnm, with_random_weights};
use pll_core::Graph;

/// Scale-free graph used by most benches.
pub fn scale_free(n: usize) -> Graph {
    barabasi_albert(n, 3, 42).expect("generator parameters are valid")
}

pub fn directed(n: usize) -> Graph {
    gnm(n, 4 * n, true, 43).expect("generator parameters are valid")
}

pub fn weighted(n: usize) -> Graph {
    with_random_weights(&scale_free(n), 1..=100, 44).expect("generator parameters are valid")
}
