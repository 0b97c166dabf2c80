//! Checks an index against single-source searches on its graph.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexId};
use crate::oracle;
use crate::DistanceIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    /// About this many pairs: random sources, each checked against every target.
    Sampled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub source: VertexId,
    pub target: VertexId,
    pub expected: Option<u32>,
    pub answered: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub pairs_checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

pub fn verify<I: DistanceIndex + ?Sized>(
    g: &Graph,
    index: &I,
    mode: VerifyMode,
    seed: u64,
) -> Result<VerifyReport> {
    let n = g.num_vertices();
    if index.num_vertices() != n || index.external_ids() != g.external_ids() {
        return Err(Error::Unsupported("index was not built from this graph".into()));
    }
    let sources: Vec<VertexId> = match mode {
        VerifyMode::Exhaustive => (0..n as VertexId).collect(),
        VerifyMode::Sampled(k) => {
            let want = (k.div_ceil(n.max(1) as u64) as usize).min(n);
            let mut s: Vec<VertexId> = sample(&mut ChaCha8Rng::seed_from_u64(seed), n, want)
                .into_iter()
                .map(|v| v as VertexId)
                .collect();
            s.sort_unstable();
            s
        }
    };
    let mut report = VerifyReport::default();
    for s in sources {
        let row = oracle::sssp(g, s, Direction::Forward);
        for t in 0..n as VertexId {
            let answered = index.distance(s, t);
            report.pairs_checked += 1;
            if answered != row.get(t) {
                report.mismatches += 1;
                report.first_mismatch.get_or_insert(Mismatch {
                    source: s,
                    target: t,
                    expected: row.get(t),
                    answered,
                });
            }
        }
    }
    Ok(report)
}
