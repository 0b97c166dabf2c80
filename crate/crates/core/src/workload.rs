//! Query latency measurement.

use std::hint::black_box;
use std::time::Instant;

use crate::analysis::random_pairs;
use crate::graph::VertexId;
use crate::DistanceIndex;

/// Latency summary in microseconds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LatencyStats {
    pub queries: usize,
    pub avg_us: f64,
    pub p50_us: f64,
    pub p90_us: f64,
    pub p99_us: f64,
    pub max_us: f64,
}

impl LatencyStats {
    pub fn from_nanos(mut samples: Vec<u64>) -> Self {
        if samples.is_empty() {
            return LatencyStats::default();
        }
        samples.sort_unstable();
        let us = |ns: u64| ns as f64 / 1000.0;
        let pct = |p: f64| us(samples[((samples.len() - 1) as f64 * p).round() as usize]);
        LatencyStats {
            queries: samples.len(),
            avg_us: samples.iter().sum::<u64>() as f64 / samples.len() as f64 / 1000.0,
            p50_us: pct(0.5),
            p90_us: pct(0.9),
            p99_us: pct(0.99),
            max_us: us(*samples.last().unwrap()),
        }
    }
}

/// Query pairs used by the benchmark; identical for equal arguments.
pub fn bench_pairs(n: usize, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    random_pairs(n, count, seed)
}

/// Times each query individually on the calling thread.
pub fn run_queries<I: DistanceIndex + ?Sized>(index: &I, pairs: &[(VertexId, VertexId)]) -> LatencyStats {
    let mut samples = Vec::with_capacity(pairs.len());
    for &(s, t) in pairs {
        let start = Instant::now();
        black_box(index.distance(black_box(s), black_box(t)));
        samples.push(start.elapsed().as_nanos() as u64);
    }
    LatencyStats::from_nanos(samples)
}

/// Formats `x` with at least three significant digits.
pub fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.3}");
    }
    let digits = x.abs().log10().floor() as i32;
    let decimals = (2 - digits).max(0) as usize;
    format!("{x:.decimals$}")
}
