//! Construction and coverage analyses over a built index, with CSV output.
//!
//! Because label entries are appended in rank order, the index after `k`
//! pruned searches is exactly the set of entries with rank `< k`. A pair is
//! therefore covered from the first `k` for which one of its hubs of rank
//! below `k` certifies the true distance, which lets every coverage curve be
//! computed from the final index in one merge per pair.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::VertexId;
use crate::label::LabelDistance;
use crate::pruned::{bp_min, BfsStats, Index};

/// Default number of random pairs for coverage analysis.
pub const DEFAULT_COVERAGE_PAIRS: usize = 1_000_000;

/// `count` random ordered pairs, or every ordered pair when `n * n <= count`.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    if (n as u128) * (n as u128) <= count as u128 {
        let n = n as VertexId;
        return (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
    }
    random_pairs(n, count, seed)
}

/// `count` uniformly random ordered pairs.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(0..n as VertexId), rng.gen_range(0..n as VertexId)))
        .collect()
}

/// One row per pruned search.
#[derive(Clone, Debug, PartialEq)]
pub struct PruneRow {
    pub k: u32,
    pub root: VertexId,
    pub visited: u32,
    pub labeled: u32,
    pub cumulative_labeled: u64,
    /// `cumulative_labeled` over the total entry count.
    pub cumulative_fraction: f64,
}

pub fn prune_profile(index: &Index) -> Vec<PruneRow> {
    prune_profile_from(index.build_stats(), |k| index.order().vertex_at(k))
}

pub fn prune_profile_from(stats: &[BfsStats], root_of: impl Fn(u32) -> VertexId) -> Vec<PruneRow> {
    let total: u64 = stats.iter().map(|s| s.labeled as u64).sum();
    let mut acc = 0u64;
    stats
        .iter()
        .map(|s| {
            acc += s.labeled as u64;
            PruneRow {
                k: s.rank,
                root: root_of(s.rank),
                visited: s.visited,
                labeled: s.labeled,
                cumulative_labeled: acc,
                cumulative_fraction: if total == 0 { 0.0 } else { acc as f64 / total as f64 },
            }
        })
        .collect()
}

/// For each sampled connected pair: its distance and the number of pruned
/// searches after which the index answers it (0 when bit-parallel labels
/// alone suffice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    n: usize,
    samples: Vec<(u32, u32)>,
    disconnected: usize,
}

impl Coverage {
    pub fn compute(index: &Index, pairs: &[(VertexId, VertexId)]) -> Coverage {
        let labels = index.labels();
        let mut samples = Vec::with_capacity(pairs.len());
        let mut disconnected = 0;
        for &(s, t) in pairs {
            let Some(d) = index.query(s, t) else {
                disconnected += 1;
                continue;
            };
            if bp_min(index.bp_labels().entries(s), index.bp_labels().entries(t)) == d {
                samples.push((d, 0));
                continue;
            }
            let (rs, ds) = (labels.ranks(s), labels.dists(s));
            let (rt, dt) = (labels.ranks(t), labels.dists(t));
            let sentinel = index.num_vertices() as u32;
            let (mut i, mut j) = (0, 0);
            let covered = loop {
                if rs[i] == rt[j] {
                    assert_ne!(rs[i], sentinel, "no hub certifies the answered distance");
                    if ds[i].to_u32() + dt[j].to_u32() == d {
                        break rs[i] + 1;
                    }
                    i += 1;
                    j += 1;
                } else if rs[i] < rt[j] {
                    i += 1;
                } else {
                    j += 1;
                }
            };
            samples.push((d, covered));
        }
        Coverage { n: index.num_vertices(), samples, disconnected }
    }

    pub fn connected_pairs(&self) -> usize {
        self.samples.len()
    }

    pub fn disconnected_pairs(&self) -> usize {
        self.disconnected
    }

    pub fn max_distance(&self) -> u32 {
        self.samples.iter().map(|s| s.0).max().unwrap_or(0)
    }

    /// Per `k` in `0..=n`, how many pairs (matching `filter`) are covered.
    pub fn curve(&self, filter: impl Fn(u32) -> bool) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for &(d, k) in &self.samples {
            if filter(d) {
                counts[k as usize] += 1;
            }
        }
        for k in 1..counts.len() {
            counts[k] += counts[k - 1];
        }
        counts
    }

    /// Fraction of matching pairs covered after `k` searches.
    pub fn fraction_at(&self, k: usize, filter: impl Fn(u32) -> bool) -> f64 {
        let total = self.samples.iter().filter(|s| filter(s.0)).count();
        if total == 0 {
            return 1.0;
        }
        let covered = self.samples.iter().filter(|s| filter(s.0) && s.1 as usize <= k).count();
        covered as f64 / total as f64
    }

    /// Smallest `k` at which at least `threshold` of matching pairs are covered.
    pub fn crossing(&self, threshold: f64, filter: impl Fn(u32) -> bool) -> Option<usize> {
        let curve = self.curve(filter);
        let total = *curve.last()? as f64;
        if total == 0.0 {
            return None;
        }
        curve.iter().position(|&c| c as f64 / total >= threshold)
    }

    /// CSV: `k,overall,d1,d2,...` with one row per `k` in `0..=n`. Distance
    /// columns hold the covered fraction of pairs at exactly that distance.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let maxd = self.max_distance();
        let overall = self.curve(|_| true);
        let per_d: Vec<Vec<u64>> = (1..=maxd).map(|d| self.curve(|x| x == d)).collect();
        write!(out, "k,overall")?;
        for d in 1..=maxd {
            write!(out, ",d{d}")?;
        }
        writeln!(out)?;
        let frac = |c: &[u64], k: usize| {
            let total = *c.last().unwrap();
            if total == 0 { 0.0 } else { c[k] as f64 / total as f64 }
        };
        for k in 0..=self.n {
            write!(out, "{k},{:.6}", frac(&overall, k))?;
            for c in &per_d {
                write!(out, ",{:.6}", frac(c, k))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Normal label sizes (sentinel excluded), ascending.
pub fn label_size_distribution(index: &Index) -> Vec<usize> {
    let mut sizes: Vec<usize> =
        (0..index.num_vertices() as VertexId).map(|v| index.labels().len(v)).collect();
    sizes.sort_unstable();
    sizes
}

pub fn write_prune_csv<W: Write>(rows: &[PruneRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "k,root,visited,labeled,cumulative_labeled,cumulative_fraction")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.6}",
            r.k, r.root, r.visited, r.labeled, r.cumulative_labeled, r.cumulative_fraction
        )?;
    }
    Ok(())
}

/// CSV: `position,label_size,fraction`, one row per vertex in ascending size.
pub fn write_label_size_csv<W: Write>(sizes: &[usize], mut out: W) -> std::io::Result<()> {
    writeln!(out, "position,label_size,fraction")?;
    let n = sizes.len().max(1) as f64;
    for (i, s) in sizes.iter().enumerate() {
        writeln!(out, "{},{},{:.6}", i, s, (i + 1) as f64 / n)?;
    }
    Ok(())
}
