//! Label storage shared by every index flavour.
//!
//! A label is a rank-sorted run of `(rank, distance)` entries. While an index
//! is being built each vertex owns a growable [`LabelBuf`]; the finished form
//! is a [`LabelSet`], which packs all ranks into one array and all distances
//! into a parallel array, with a `(n, INF)` sentinel closing every label.

use std::fmt::Debug;

use crate::graph::VertexId;

/// Distance type stored in labels.
pub trait LabelDistance: Copy + Ord + Debug + Send + Sync + 'static {
    const INF: Self;
    const BYTES: usize;

    fn to_u32(self) -> u32;
    fn write_le(self, out: &mut Vec<u8>);
    fn read_le(bytes: &[u8]) -> Self;
}

impl LabelDistance for u8 {
    const INF: Self = u8::MAX;
    const BYTES: usize = 1;

    #[inline]
    fn to_u32(self) -> u32 {
        self as u32
    }

    fn write_le(self, out: &mut Vec<u8>) {
        out.push(self);
    }

    fn read_le(bytes: &[u8]) -> Self {
        bytes[0]
    }
}

impl LabelDistance for u32 {
    const INF: Self = u32::MAX;
    const BYTES: usize = 4;

    #[inline]
    fn to_u32(self) -> u32 {
        self
    }

    fn write_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        u32::from_le_bytes(bytes[..4].try_into().unwrap())
    }
}

/// Query results use `u32::MAX` internally for "unreachable".
pub(crate) const UNREACHABLE: u32 = u32::MAX;

#[inline]
pub(crate) fn to_option(d: u32) -> Option<u32> {
    (d != UNREACHABLE).then_some(d)
}

/// A label under construction; no sentinel.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelBuf<D> {
    pub ranks: Vec<u32>,
    pub dists: Vec<D>,
}

impl<D: LabelDistance> LabelBuf<D> {
    #[inline]
    pub fn push(&mut self, rank: u32, dist: D) {
        debug_assert!(self.ranks.last().is_none_or(|&r| r < rank));
        self.ranks.push(rank);
        self.dists.push(dist);
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Merge-join over two rank-sorted labels without sentinels.
#[inline]
pub(crate) fn merge_min<D: LabelDistance>(ra: &[u32], da: &[D], rb: &[u32], db: &[D]) -> u32 {
    let (mut i, mut j) = (0, 0);
    let mut best = UNREACHABLE;
    while i < ra.len() && j < rb.len() {
        match ra[i].cmp(&rb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                best = best.min(da[i].to_u32() + db[j].to_u32());
                i += 1;
                j += 1;
            }
        }
    }
    best
}

/// Finished labels for all vertices in two contiguous parallel arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet<D> {
    offsets: Vec<usize>,
    ranks: Vec<u32>,
    dists: Vec<D>,
}

impl<D: LabelDistance> LabelSet<D> {
    /// Packs per-vertex buffers, appending the `(n, INF)` sentinel to each.
    pub fn from_bufs(bufs: Vec<LabelBuf<D>>) -> Self {
        let n = bufs.len();
        let total: usize = bufs.iter().map(|b| b.len() + 1).sum();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut ranks = Vec::with_capacity(total);
        let mut dists = Vec::with_capacity(total);
        offsets.push(0);
        for buf in bufs {
            ranks.extend_from_slice(&buf.ranks);
            dists.extend_from_slice(&buf.dists);
            ranks.push(n as u32);
            dists.push(D::INF);
            offsets.push(ranks.len());
        }
        LabelSet { offsets, ranks, dists }
    }

    /// Rebuilds from raw parts, validating layout. Used by the index reader.
    pub(crate) fn from_parts(
        offsets: Vec<usize>,
        ranks: Vec<u32>,
        dists: Vec<D>,
    ) -> Result<Self, String> {
        let n = offsets.len().checked_sub(1).ok_or("empty offset table")?;
        if offsets[0] != 0 || *offsets.last().unwrap() != ranks.len() || ranks.len() != dists.len()
        {
            return Err("label offsets do not match label arrays".into());
        }
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            if hi <= lo {
                return Err(format!("label of vertex {v} lacks its sentinel"));
            }
            let r = &ranks[lo..hi];
            if r[r.len() - 1] != n as u32 || dists[hi - 1] != D::INF {
                return Err(format!("label of vertex {v} has a bad sentinel"));
            }
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("label of vertex {v} is not sorted by rank"));
            }
        }
        Ok(LabelSet { offsets, ranks, dists })
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Ranks of `v`'s label including the sentinel.
    #[inline]
    pub fn ranks(&self, v: VertexId) -> &[u32] {
        &self.ranks[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn dists(&self, v: VertexId) -> &[D] {
        &self.dists[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// `(rank, dist)` entries of `v`, sentinel excluded.
    pub fn entries(&self, v: VertexId) -> impl Iterator<Item = (u32, D)> + '_ {
        let (r, d) = (self.ranks(v), self.dists(v));
        r[..r.len() - 1].iter().copied().zip(d.iter().copied())
    }

    /// Entry count of `v`, sentinel excluded.
    pub fn len(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize] - 1
    }

    /// Entry count over all vertices, sentinels excluded.
    pub fn total_entries(&self) -> usize {
        self.ranks.len() - self.num_vertices()
    }

    /// Start offset of each vertex's label in the packed arrays, plus the end.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Sentinel-terminated merge-join of `self[s]` against `other[t]`.
    #[inline]
    pub fn query_with(&self, s: VertexId, other: &LabelSet<D>, t: VertexId) -> u32 {
        let (rs, ds) = (self.ranks(s), self.dists(s));
        let (rt, dt) = (other.ranks(t), other.dists(t));
        let sentinel = self.num_vertices() as u32;
        let (mut i, mut j) = (0, 0);
        let mut best = UNREACHABLE;
        loop {
            let (a, b) = (rs[i], rt[j]);
            if a == b {
                if a == sentinel {
                    break;
                }
                best = best.min(ds[i].to_u32() + dt[j].to_u32());
                i += 1;
                j += 1;
            } else if a < b {
                i += 1;
            } else {
                j += 1;
            }
        }
        best
    }

    /// Like [`LabelSet::query_with`] but only hubs with rank `< k` count.
    pub fn query_prefix_with(&self, s: VertexId, other: &LabelSet<D>, t: VertexId, k: u32) -> u32 {
        let cut = |r: &[u32]| r.partition_point(|&x| x < k);
        let (rs, rt) = (self.ranks(s), other.ranks(t));
        let (cs, ct) = (cut(rs), cut(rt));
        merge_min(&rs[..cs], &self.dists(s)[..cs], &rt[..ct], &other.dists(t)[..ct])
    }

    /// Hub rank, distance to `s`, distance to `t` of the best common hub.
    pub fn best_hub_with(&self, s: VertexId, other: &LabelSet<D>, t: VertexId) -> Option<(u32, usize, usize)> {
        let (rs, ds) = (self.ranks(s), self.dists(s));
        let (rt, dt) = (other.ranks(t), other.dists(t));
        let (mut i, mut j) = (0, 0);
        let mut best: Option<(u32, usize, usize)> = None;
        let mut best_d = UNREACHABLE;
        while i + 1 < rs.len() && j + 1 < rt.len() {
            match rs[i].cmp(&rt[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let d = ds[i].to_u32() + dt[j].to_u32();
                    if d < best_d {
                        best_d = d;
                        best = Some((rs[i], i, j));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        best
    }

    /// Copy with the `pos`-th entry of `v` removed. Panics on the sentinel.
    pub fn without_entry(&self, v: VertexId, pos: usize) -> Self {
        assert!(pos < self.len(v), "cannot remove the sentinel");
        let at = self.offsets[v as usize] + pos;
        let mut out = self.clone();
        out.ranks.remove(at);
        out.dists.remove(at);
        for o in &mut out.offsets[v as usize + 1..] {
            *o -= 1;
        }
        out
    }
}
