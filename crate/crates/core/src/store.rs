//! Binary index files.
//!
//! All integers are little-endian. The file starts with a fixed 80-byte
//! header:
//!
//! | offset | type      | field                                        |
//! |--------|-----------|----------------------------------------------|
//! | 0      | [u8; 4]   | magic `PLL1`                                 |
//! | 4      | u16       | format version (1)                           |
//! | 6      | u16       | flags: 1 directed, 2 weighted, 4 paths       |
//! | 8      | u8        | bit-parallel width `b`                       |
//! | 9      | u8        | bytes per label distance (1 or 4)            |
//! | 10     | u16       | reserved, zero                               |
//! | 12     | u32       | bit-parallel roots `t`                       |
//! | 16     | u64       | vertices `n`                                 |
//! | 24     | u64       | arc slots `m`                                |
//! | 32     | u64       | order section offset                         |
//! | 40     | u64       | bit-parallel section offset                  |
//! | 48     | u64       | label section offset (`out` labels if directed) |
//! | 56     | u64       | `in` label section offset, 0 if undirected   |
//! | 64     | u64       | parent section offset, 0 if absent           |
//! | 72     | u64       | total file length                            |
//!
//! The order section holds `vertex_at` as `u32[n]` followed by the external
//! id of every vertex as `u64[n]`. Every other section starts with a table
//! of `n + 1` record offsets (`u64`, relative to the end of the table) so a
//! single vertex's record can be read with one seek. Records are:
//!
//! * bit-parallel: `count: u32`, then `count` packed 21-byte entries
//!   `(root_rank: u32, dist: u8, mask_m1: u64, mask_0: u64)`;
//! * labels: `count: u32` (sentinel included), `ranks: u32[count]`,
//!   `dists: u8[count]` or `u32[count]`;
//! * parents: `count: u32`, `parents: u32[count]`.

use std::fs::File;
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;

use crate::bitparallel::{BpEntry, BpLabels};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::label::{merge_min, to_option, LabelDistance, LabelSet};
use crate::order::{OrderStrategy, VertexOrder};
use crate::pruned::{bp_min, Index};
use crate::variants::{DirectedIndex, WeightedIndex};
use crate::DistanceIndex;

pub const MAGIC: [u8; 4] = *b"PLL1";
pub const FORMAT_VERSION: u16 = 1;
pub const HEADER_BYTES: usize = 80;
pub const BP_ENTRY_BYTES: usize = 21;

pub const FLAG_DIRECTED: u16 = 1;
pub const FLAG_WEIGHTED: u16 = 2;
pub const FLAG_PATHS: u16 = 4;

/// Any index kind that can be stored.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyIndex {
    Plain(Index),
    Directed(DirectedIndex),
    Weighted(WeightedIndex),
}

impl AnyIndex {
    pub fn num_arcs(&self) -> u64 {
        match self {
            AnyIndex::Plain(i) => i.num_arcs(),
            AnyIndex::Directed(i) => i.num_arcs(),
            AnyIndex::Weighted(i) => i.num_arcs(),
        }
    }

    pub fn order(&self) -> &VertexOrder {
        match self {
            AnyIndex::Plain(i) => i.order(),
            AnyIndex::Directed(i) => i.order(),
            AnyIndex::Weighted(i) => i.order(),
        }
    }

    pub fn is_directed(&self) -> bool {
        match self {
            AnyIndex::Plain(_) => false,
            AnyIndex::Directed(_) => true,
            AnyIndex::Weighted(i) => i.is_directed(),
        }
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self, AnyIndex::Weighted(_))
    }

    /// Normal label entries per vertex (both directions for directed indices).
    pub fn avg_label_size(&self) -> f64 {
        match self {
            AnyIndex::Plain(i) => i.avg_label_size(),
            AnyIndex::Directed(i) => i.avg_label_size(),
            AnyIndex::Weighted(i) => i.avg_label_size(),
        }
    }

    pub fn avg_bp_label_size(&self) -> f64 {
        match self {
            AnyIndex::Plain(i) => i.avg_bp_label_size(),
            _ => 0.0,
        }
    }

    pub fn as_plain(&self) -> Option<&Index> {
        match self {
            AnyIndex::Plain(i) => Some(i),
            _ => None,
        }
    }
}

impl DistanceIndex for AnyIndex {
    fn num_vertices(&self) -> usize {
        match self {
            AnyIndex::Plain(i) => i.num_vertices(),
            AnyIndex::Directed(i) => i.num_vertices(),
            AnyIndex::Weighted(i) => i.num_vertices(),
        }
    }

    #[inline]
    fn distance(&self, s: VertexId, t: VertexId) -> Option<u32> {
        match self {
            AnyIndex::Plain(i) => i.query(s, t),
            AnyIndex::Directed(i) => i.query(s, t),
            AnyIndex::Weighted(i) => i.query(s, t),
        }
    }

    fn external_ids(&self) -> &[u64] {
        match self {
            AnyIndex::Plain(i) => &i.ids,
            AnyIndex::Directed(i) => &i.ids,
            AnyIndex::Weighted(i) => &i.ids,
        }
    }
}

impl From<Index> for AnyIndex {
    fn from(i: Index) -> Self {
        AnyIndex::Plain(i)
    }
}

impl From<DirectedIndex> for AnyIndex {
    fn from(i: DirectedIndex) -> Self {
        AnyIndex::Directed(i)
    }
}

impl From<WeightedIndex> for AnyIndex {
    fn from(i: WeightedIndex) -> Self {
        AnyIndex::Weighted(i)
    }
}

fn put_u16(out: &mut Vec<u8>, x: u16) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, x: u64) {
    out.extend_from_slice(&x.to_le_bytes());
}

/// Writes an offset table plus records produced by `record(v, buf)`.
fn put_section(out: &mut Vec<u8>, n: usize, mut record: impl FnMut(usize, &mut Vec<u8>)) {
    let mut records = Vec::new();
    let mut offsets = Vec::with_capacity(n + 1);
    for v in 0..n {
        offsets.push(records.len() as u64);
        record(v, &mut records);
    }
    offsets.push(records.len() as u64);
    for o in offsets {
        put_u64(out, o);
    }
    out.extend_from_slice(&records);
}

fn put_labels<D: LabelDistance>(out: &mut Vec<u8>, labels: &LabelSet<D>) {
    put_section(out, labels.num_vertices(), |v, buf| {
        let (ranks, dists) = (labels.ranks(v as VertexId), labels.dists(v as VertexId));
        put_u32(buf, ranks.len() as u32);
        for &r in ranks {
            put_u32(buf, r);
        }
        for &d in dists {
            d.write_le(buf);
        }
    });
}

/// Serializes an index into its file representation.
pub fn encode_index(index: &AnyIndex) -> Vec<u8> {
    let order = index.order();
    let n = order.len();
    let (mut flags, dist_bytes) = match index {
        AnyIndex::Plain(_) => (0, 1u8),
        AnyIndex::Directed(_) => (FLAG_DIRECTED, 1),
        AnyIndex::Weighted(w) => (FLAG_WEIGHTED | if w.is_directed() { FLAG_DIRECTED } else { 0 }, 4),
    };
    let (bp_width, bp_roots) = match index {
        AnyIndex::Plain(i) => (i.bp_width() as u8, i.bp_roots() as u32),
        _ => (crate::bitparallel::BP_WIDTH as u8, 0),
    };
    if index.as_plain().is_some_and(Index::has_paths) {
        flags |= FLAG_PATHS;
    }

    let mut out = vec![0u8; HEADER_BYTES];
    let order_off = out.len();
    for &v in order.vertices() {
        put_u32(&mut out, v);
    }
    for &id in index.external_ids() {
        put_u64(&mut out, id);
    }

    let bp_off = out.len();
    let empty = BpLabels::empty(n);
    let bp = index.as_plain().map_or(&empty, |i| i.bp_labels());
    put_section(&mut out, n, |v, buf| {
        let entries = bp.entries(v as VertexId);
        put_u32(buf, entries.len() as u32);
        for e in entries {
            put_u32(buf, e.root);
            buf.push(e.dist);
            put_u64(buf, e.mask_m1);
            put_u64(buf, e.mask_0);
        }
    });

    let label_off = out.len();
    let mut label_in_off = 0;
    let mut parent_off = 0;
    match index {
        AnyIndex::Plain(i) => {
            put_labels(&mut out, i.labels());
            if let Some(parents) = i.parents() {
                parent_off = out.len();
                let offsets = i.labels().offsets();
                put_section(&mut out, n, |v, buf| {
                    let run = &parents[offsets[v]..offsets[v + 1]];
                    put_u32(buf, run.len() as u32);
                    for &p in run {
                        put_u32(buf, p);
                    }
                });
            }
        }
        AnyIndex::Directed(d) => {
            put_labels(&mut out, d.out_labels());
            label_in_off = out.len();
            put_labels(&mut out, d.in_labels());
        }
        AnyIndex::Weighted(w) => {
            put_labels(&mut out, w.labels());
            if let Some(inn) = w.in_labels() {
                label_in_off = out.len();
                put_labels(&mut out, inn);
            }
        }
    }
    let file_len = out.len();

    let mut header = Vec::with_capacity(HEADER_BYTES);
    header.extend_from_slice(&MAGIC);
    put_u16(&mut header, FORMAT_VERSION);
    put_u16(&mut header, flags);
    header.push(bp_width);
    header.push(dist_bytes);
    put_u16(&mut header, 0);
    put_u32(&mut header, bp_roots);
    put_u64(&mut header, n as u64);
    put_u64(&mut header, index.num_arcs());
    for off in [order_off, bp_off, label_off, label_in_off, parent_off, file_len] {
        put_u64(&mut header, off as u64);
    }
    debug_assert_eq!(header.len(), HEADER_BYTES);
    out[..HEADER_BYTES].copy_from_slice(&header);
    out
}

/// Writes `index` to `sink`, returning the number of bytes written.
pub fn save_index<W: Write>(index: &AnyIndex, mut sink: W) -> Result<u64> {
    let bytes = encode_index(index);
    sink.write_all(&bytes)?;
    sink.flush()?;
    Ok(bytes.len() as u64)
}

pub fn save_index_file(index: &AnyIndex, path: impl AsRef<Path>) -> Result<u64> {
    save_index(index, std::io::BufWriter::new(File::create(path)?))
}

/// Parsed fixed header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub version: u16,
    pub flags: u16,
    pub bp_width: u8,
    pub dist_bytes: u8,
    pub bp_roots: u32,
    pub n: u64,
    pub m: u64,
    pub order_off: u64,
    pub bp_off: u64,
    pub label_off: u64,
    pub label_in_off: u64,
    pub parent_off: u64,
    pub file_len: u64,
}

impl Header {
    pub fn parse(bytes: &[u8]) -> Result<Header> {
        if bytes.len() < 4 || bytes[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if bytes.len() < HEADER_BYTES {
            return Err(Error::Corrupt("truncated header".into()));
        }
        let mut c = Cursor { bytes, pos: 4 };
        let version = c.u16()?;
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {version}")));
        }
        let flags = c.u16()?;
        if flags & !(FLAG_DIRECTED | FLAG_WEIGHTED | FLAG_PATHS) != 0 {
            return Err(Error::Format(format!("unknown flags {flags:#x}")));
        }
        let bp_width = c.u8()?;
        let dist_bytes = c.u8()?;
        c.u16()?;
        let expected = if flags & FLAG_WEIGHTED != 0 { 4 } else { 1 };
        if dist_bytes != expected {
            return Err(Error::Format(format!("distance width {dist_bytes} does not match flags")));
        }
        Ok(Header {
            version,
            flags,
            bp_width,
            dist_bytes,
            bp_roots: c.u32()?,
            n: c.u64()?,
            m: c.u64()?,
            order_off: c.u64()?,
            bp_off: c.u64()?,
            label_off: c.u64()?,
            label_in_off: c.u64()?,
            parent_off: c.u64()?,
            file_len: c.u64()?,
        })
    }

    pub fn is_directed(&self) -> bool {
        self.flags & FLAG_DIRECTED != 0
    }

    pub fn is_weighted(&self) -> bool {
        self.flags & FLAG_WEIGHTED != 0
    }

    pub fn has_paths(&self) -> bool {
        self.flags & FLAG_PATHS != 0
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn at(bytes: &'a [u8], pos: u64) -> Result<Self> {
        if pos > bytes.len() as u64 {
            return Err(Error::Corrupt(format!("section offset {pos} beyond end of file")));
        }
        Ok(Cursor { bytes, pos: pos as usize })
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Corrupt("unexpected end of file".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Reads an offset table and checks it is monotone and ends at `end`
    /// bytes of records, returning record-start offsets.
    fn offset_table(&mut self, n: usize) -> Result<(Vec<u64>, usize)> {
        let table: Vec<u64> = (0..=n).map(|_| self.u64()).collect::<Result<_>>()?;
        if table[0] != 0 || table.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Corrupt("record offsets are not monotone".into()));
        }
        Ok((table, self.pos))
    }
}

fn read_labels<D: LabelDistance>(bytes: &[u8], off: u64, n: usize) -> Result<LabelSet<D>> {
    let mut c = Cursor::at(bytes, off)?;
    let (table, base) = c.offset_table(n)?;
    let mut offsets = Vec::with_capacity(n + 1);
    let mut ranks = Vec::new();
    let mut dists = Vec::new();
    offsets.push(0);
    for (v, &start) in table[..n].iter().enumerate() {
        if c.pos - base != start as usize {
            return Err(Error::Corrupt(format!("label record of vertex {v} is misplaced")));
        }
        let count = c.u32()? as usize;
        let raw = c.take(count.checked_mul(4).ok_or_else(|| Error::Corrupt("label count".into()))?)?;
        ranks.extend(raw.chunks_exact(4).map(|b| u32::from_le_bytes(b.try_into().unwrap())));
        let raw = c.take(count * D::BYTES)?;
        dists.extend(raw.chunks_exact(D::BYTES).map(D::read_le));
        offsets.push(ranks.len());
    }
    if c.pos - base != table[n] as usize {
        return Err(Error::Corrupt("label section length mismatch".into()));
    }
    LabelSet::from_parts(offsets, ranks, dists).map_err(Error::Corrupt)
}

fn read_bp(bytes: &[u8], off: u64, n: usize, roots: usize) -> Result<BpLabels> {
    let mut c = Cursor::at(bytes, off)?;
    let (table, base) = c.offset_table(n)?;
    let mut per_vertex = Vec::with_capacity(n);
    for (v, &start) in table[..n].iter().enumerate() {
        if c.pos - base != start as usize {
            return Err(Error::Corrupt(format!("bit-parallel record of vertex {v} is misplaced")));
        }
        let count = c.u32()? as usize;
        let mut entries = Vec::with_capacity(count.min(64));
        for _ in 0..count {
            let e = BpEntry { root: c.u32()?, dist: c.u8()?, mask_m1: c.u64()?, mask_0: c.u64()? };
            if e.mask_m1 & e.mask_0 != 0 {
                return Err(Error::Corrupt(format!("overlapping bit-parallel masks at vertex {v}")));
            }
            entries.push(e);
        }
        if entries.windows(2).any(|w| w[0].root >= w[1].root) {
            return Err(Error::Corrupt(format!("bit-parallel label of vertex {v} unsorted")));
        }
        per_vertex.push(entries);
    }
    Ok(BpLabels::from_per_vertex(per_vertex, roots))
}

fn read_parents(bytes: &[u8], off: u64, labels: &LabelSet<u8>) -> Result<Vec<u32>> {
    let n = labels.num_vertices();
    let mut c = Cursor::at(bytes, off)?;
    let (_, _) = c.offset_table(n)?;
    let mut parents = Vec::with_capacity(labels.offsets()[n]);
    for v in 0..n {
        let count = c.u32()? as usize;
        if count != labels.ranks(v as VertexId).len() {
            return Err(Error::Corrupt(format!("parent record of vertex {v} has wrong length")));
        }
        for _ in 0..count {
            parents.push(c.u32()?);
        }
    }
    Ok(parents)
}

/// Parses an index from its file bytes.
pub fn decode_index(bytes: &[u8]) -> Result<AnyIndex> {
    let h = Header::parse(bytes)?;
    if h.file_len != bytes.len() as u64 {
        return Err(Error::Corrupt(format!(
            "file is {} bytes, header records {}",
            bytes.len(),
            h.file_len
        )));
    }
    let n = usize::try_from(h.n).map_err(|_| Error::Corrupt("vertex count".into()))?;
    if n >= u32::MAX as usize || n.saturating_mul(12) > bytes.len() {
        return Err(Error::Corrupt(format!("implausible vertex count {n}")));
    }

    let mut c = Cursor::at(bytes, h.order_off)?;
    let vertex_at: Vec<u32> = (0..n).map(|_| c.u32()).collect::<Result<_>>()?;
    let ids: Vec<u64> = (0..n).map(|_| c.u64()).collect::<Result<_>>()?;
    let order = VertexOrder::from_vertex_at(vertex_at, OrderStrategy::Explicit)
        .map_err(|e| Error::Corrupt(e.to_string()))?;
    let bp = read_bp(bytes, h.bp_off, n, h.bp_roots as usize)?;

    Ok(if h.is_weighted() {
        let out = read_labels::<u32>(bytes, h.label_off, n)?;
        let inn = if h.is_directed() {
            Some(read_labels::<u32>(bytes, h.label_in_off, n)?)
        } else {
            None
        };
        AnyIndex::Weighted(WeightedIndex { out, inn, order, ids, num_arcs: h.m, stats: Vec::new() })
    } else if h.is_directed() {
        let out = read_labels::<u8>(bytes, h.label_off, n)?;
        let inn = read_labels::<u8>(bytes, h.label_in_off, n)?;
        AnyIndex::Directed(DirectedIndex { out, inn, order, ids, num_arcs: h.m, stats: Vec::new() })
    } else {
        let labels = read_labels::<u8>(bytes, h.label_off, n)?;
        let parents = if h.has_paths() { Some(read_parents(bytes, h.parent_off, &labels)?) } else { None };
        AnyIndex::Plain(Index {
            labels,
            bp,
            bp_width: h.bp_width as usize,
            order,
            parents,
            ids,
            num_arcs: h.m,
            stats: Vec::new(),
        })
    })
}

/// Reads a whole index; nothing is returned unless the file parses completely.
pub fn load_index<R: Read>(mut source: R) -> Result<AnyIndex> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    decode_index(&bytes)
}

pub fn load_index_file(path: impl AsRef<Path>) -> Result<AnyIndex> {
    load_index(std::io::BufReader::new(File::open(path)?))
}

/// Answers queries on an undirected, unweighted index file without loading
/// its labels: each endpoint costs one read of its label record (plus one of
/// its bit-parallel record when the index has any).
pub struct DiskIndex<F> {
    file: F,
    header: Header,
    label_table: Vec<u64>,
    label_base: u64,
    bp_table: Vec<u64>,
    bp_base: u64,
}

impl<F: Read + Seek> DiskIndex<F> {
    pub fn open(mut file: F) -> Result<Self> {
        let mut head = vec![0u8; HEADER_BYTES];
        file.seek(SeekFrom::Start(0))?;
        file.read_exact(&mut head).map_err(|_| Error::Corrupt("truncated header".into()))?;
        let header = Header::parse(&head)?;
        if header.is_directed() || header.is_weighted() {
            return Err(Error::Unsupported(
                "disk queries need an undirected, unweighted index".into(),
            ));
        }
        let n = header.n as usize;
        let table = |file: &mut F, off: u64| -> Result<Vec<u64>> {
            file.seek(SeekFrom::Start(off))?;
            let mut raw = vec![0u8; (n + 1) * 8];
            file.read_exact(&mut raw).map_err(|_| Error::Corrupt("truncated offset table".into()))?;
            Ok(raw.chunks_exact(8).map(|b| u64::from_le_bytes(b.try_into().unwrap())).collect())
        };
        let label_table = table(&mut file, header.label_off)?;
        let bp_table = table(&mut file, header.bp_off)?;
        Ok(DiskIndex {
            file,
            header,
            label_base: header.label_off + (n as u64 + 1) * 8,
            bp_base: header.bp_off + (n as u64 + 1) * 8,
            label_table,
            bp_table,
        })
    }

    pub fn header(&self) -> &Header {
        &self.header
    }

    /// Byte range of `v`'s label record within the file.
    pub fn label_region(&self, v: VertexId) -> std::ops::Range<u64> {
        let v = v as usize;
        self.label_base + self.label_table[v]..self.label_base + self.label_table[v + 1]
    }

    fn read_region(&mut self, start: u64, end: u64) -> Result<Vec<u8>> {
        let mut buf = vec![0u8; (end - start) as usize];
        self.file.seek(SeekFrom::Start(start))?;
        self.file.read_exact(&mut buf).map_err(|_| Error::Corrupt("truncated record".into()))?;
        Ok(buf)
    }

    fn label(&mut self, v: VertexId) -> Result<(Vec<u32>, Vec<u8>)> {
        let r = self.label_region(v);
        let raw = self.read_region(r.start, r.end)?;
        let count = u32::from_le_bytes(raw[..4].try_into().unwrap()) as usize;
        if raw.len() != 4 + count * 5 {
            return Err(Error::Corrupt(format!("label record of vertex {v}")));
        }
        if count == 0 {
            return Err(Error::Corrupt(format!("label record of vertex {v} lacks its sentinel")));
        }
        // drop the sentinel; merge_min stops at the shorter label
        let ranks = raw[4..4 * count]
            .chunks_exact(4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
            .collect();
        Ok((ranks, raw[4 + 4 * count..4 + 5 * count - 1].to_vec()))
    }

    fn bp_label(&mut self, v: VertexId) -> Result<Vec<BpEntry>> {
        let (s, e) = (self.bp_table[v as usize], self.bp_table[v as usize + 1]);
        let raw = self.read_region(self.bp_base + s, self.bp_base + e)?;
        let mut c = Cursor { bytes: &raw, pos: 0 };
        let count = c.u32()?;
        (0..count)
            .map(|_| Ok(BpEntry { root: c.u32()?, dist: c.u8()?, mask_m1: c.u64()?, mask_0: c.u64()? }))
            .collect()
    }

    pub fn query(&mut self, s: VertexId, t: VertexId) -> Result<Option<u32>> {
        let n = self.header.n as usize;
        for v in [s, t] {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n });
            }
        }
        let (rs, ds) = self.label(s)?;
        let (rt, dt) = self.label(t)?;
        let mut best = merge_min(&rs, &ds, &rt, &dt);
        if self.header.bp_roots > 0 {
            let (bs, bt) = (self.bp_label(s)?, self.bp_label(t)?);
            best = best.min(bp_min(&bs, &bt));
        }
        Ok(to_option(best))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::order::order_degree;
    use crate::pruned::{build_index, BuildOptions};

    fn sample() -> Index {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)], false).unwrap();
        build_index(&g, order_degree(&g)).unwrap()
    }

    #[test]
    fn single_vertex_file_size() {
        let g = Graph::from_edges(1, [], false).unwrap();
        let idx: AnyIndex = build_index(&g, order_degree(&g)).unwrap().into();
        let bytes = encode_index(&idx);
        let order = 4 + 8;
        let bp = 2 * 8 + 4;
        let labels = 2 * 8 + 4 + 2 * (4 + 1);
        assert_eq!(bytes.len(), HEADER_BYTES + order + bp + labels);
    }

    #[test]
    fn header_fields() {
        let bytes = encode_index(&sample().into());
        let h = Header::parse(&bytes).unwrap();
        assert_eq!((h.n, h.m, h.bp_roots, h.bp_width), (6, 10, 0, 64));
        assert_eq!(h.file_len, bytes.len() as u64);
        assert_eq!(&bytes[..4], b"PLL1");
    }

    #[test]
    fn bad_magic_and_version() {
        let mut bytes = encode_index(&sample().into());
        bytes[4] = 9;
        assert!(matches!(decode_index(&bytes), Err(Error::Format(_))));
        bytes[0] = b'X';
        assert!(matches!(decode_index(&bytes), Err(Error::Format(_))));
    }

    #[test]
    fn truncation_is_corruption() {
        let bytes = encode_index(&sample().into());
        for cut in [10, HEADER_BYTES, bytes.len() / 2, bytes.len() - 1] {
            assert!(matches!(decode_index(&bytes[..cut]), Err(Error::Corrupt(_))), "cut {cut}");
        }
    }

    #[test]
    fn corrupted_label_layout_is_rejected() {
        let idx = sample();
        let bytes = encode_index(&idx.clone().into());
        let h = Header::parse(&bytes).unwrap();
        // first rank of vertex 0's label: make it collide with the sentinel
        let first_rank = h.label_off as usize + 7 * 8 + 4;
        let mut bad = bytes.clone();
        bad[first_rank..first_rank + 4].copy_from_slice(&6u32.to_le_bytes());
        assert!(matches!(decode_index(&bad), Err(Error::Corrupt(_))));
    }

    #[test]
    fn flags_round_trip() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)], true).unwrap();
        let d: AnyIndex = crate::variants::build_index_directed(&g, order_degree(&g)).unwrap().into();
        let back = decode_index(&encode_index(&d)).unwrap();
        assert!(back.is_directed());
        assert_eq!(back, d);

        let w = Graph::from_weighted_edges(3, [(0, 1, 5), (1, 2, 7)], false).unwrap();
        let wi: AnyIndex = crate::variants::build_index_weighted(&w, order_degree(&w)).unwrap().into();
        let back = decode_index(&encode_index(&wi)).unwrap();
        assert!(back.is_weighted() && !back.is_directed());
        assert_eq!(back.distance(0, 2), Some(12));

        let p: AnyIndex = Index::build(
            &Graph::from_edges(3, [(0, 1), (1, 2)], false).unwrap(),
            VertexOrder::identity(3),
            &BuildOptions { record_paths: true, ..Default::default() },
        )
        .unwrap()
        .into();
        let back = decode_index(&encode_index(&p)).unwrap();
        assert_eq!(back.as_plain().unwrap().path(0, 2).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn disk_queries_match_memory() {
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (5, 6), (4, 7)], false)
            .unwrap();
        for t in [0, 2] {
            let idx = Index::build(&g, order_degree(&g), &BuildOptions { bp_roots: t, ..Default::default() })
                .unwrap();
            let bytes = encode_index(&idx.clone().into());
            let mut disk = DiskIndex::open(std::io::Cursor::new(bytes)).unwrap();
            for s in 0..8 {
                for u in 0..8 {
                    assert_eq!(disk.query(s, u).unwrap(), idx.query(s, u));
                }
            }
            let mut prev = disk.label_region(0);
            for v in 1..8 {
                let r = disk.label_region(v);
                assert_eq!(r.start, prev.end);
                prev = r;
            }
        }
    }
}
