//! Compressed adjacency graphs over dense vertex ids.
//!
//! Vertices are numbered `0..n`. Edge-list inputs may use arbitrary
//! non-negative external ids; the loader remaps them to dense ids in
//! ascending external-id order and keeps the mapping so answers can be
//! reported in the caller's id space.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Which adjacency to follow. `Reverse` walks incoming arcs of a directed
/// graph and is identical to `Forward` on undirected graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Option<Vec<u32>>,
}

impl Csr {
    /// `arcs` must be sorted by (source, target) and free of duplicates.
    fn from_sorted_arcs(n: usize, arcs: &[(VertexId, VertexId, u32)], weighted: bool) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.iter().map(|&(_, v, _)| v).collect();
        let weights = weighted.then(|| arcs.iter().map(|&(_, _, w)| w).collect());
        Csr { offsets, targets, weights }
    }

    #[inline]
    fn range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }
}

/// An immutable graph in compressed sparse row form.
///
/// Undirected graphs store every edge in both endpoint lists. Directed graphs
/// additionally keep a reverse adjacency. Neighbor lists are sorted and free
/// of self-loops and duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    fwd: Csr,
    rev: Option<Csr>,
    ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` with the identity id map.
    ///
    /// Self-loops are dropped and parallel edges collapsed, keeping the
    /// smallest weight. Endpoints must be `< n`.
    pub fn from_edges<I>(n: usize, edges: I, directed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::build(
            (0..n as u64).collect(),
            edges.into_iter().map(|(u, v)| (u, v, 1)),
            directed,
            false,
        )
    }

    /// Weighted counterpart of [`Graph::from_edges`].
    pub fn from_weighted_edges<I>(n: usize, edges: I, directed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32)>,
    {
        Self::build((0..n as u64).collect(), edges, directed, true)
    }

    fn build<I>(ids: Vec<u64>, edges: I, directed: bool, weighted: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32)>,
    {
        let n = ids.len();
        if n >= u32::MAX as usize {
            return Err(Error::Unsupported(format!("{n} vertices exceed the 32-bit id space")));
        }
        let mut arcs = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            if u == v {
                continue;
            }
            arcs.push((u, v, w));
            if !directed {
                arcs.push((v, u, w));
            }
        }
        let fwd = Csr::from_sorted_arcs(n, &normalize(&mut arcs), weighted);
        let rev = if directed {
            let mut back: Vec<_> = arcs.iter().map(|&(u, v, w)| (v, u, w)).collect();
            Some(Csr::from_sorted_arcs(n, &normalize(&mut back), weighted))
        } else {
            None
        };
        Ok(Graph { directed, fwd, rev, ids })
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    /// Number of directed edge slots: twice the edge count for undirected graphs.
    pub fn num_arcs(&self) -> usize {
        self.fwd.targets.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.fwd.weights.is_some()
    }

    /// External id of each dense vertex.
    pub fn external_ids(&self) -> &[u64] {
        &self.ids
    }

    /// Dense id for an external id, if the vertex exists.
    pub fn dense_id(&self, external: u64) -> Option<VertexId> {
        self.ids.binary_search(&external).ok().map(|i| i as VertexId)
    }

    fn csr(&self, dir: Direction) -> &Csr {
        match (dir, &self.rev) {
            (Direction::Reverse, Some(rev)) => rev,
            _ => &self.fwd,
        }
    }

    /// Sorted neighbor list. Panics if `v >= n`.
    #[inline]
    pub fn neighbors(&self, v: VertexId, dir: Direction) -> &[VertexId] {
        let csr = self.csr(dir);
        &csr.targets[csr.range(v)]
    }

    pub fn try_neighbors(&self, v: VertexId, dir: Direction) -> Result<&[VertexId]> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v, dir))
    }

    /// Neighbors paired with edge weights (1 on unweighted graphs).
    #[inline]
    pub fn weighted_neighbors(
        &self,
        v: VertexId,
        dir: Direction,
    ) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        let csr = self.csr(dir);
        let range = csr.range(v);
        let targets = &csr.targets[range.clone()];
        let weights = csr.weights.as_ref().map(|w| &w[range]);
        targets
            .iter()
            .enumerate()
            .map(move |(i, &u)| (u, weights.map_or(1, |w| w[i])))
    }

    /// Out-degree plus in-degree for directed graphs, plain degree otherwise.
    pub fn degree(&self, v: VertexId) -> usize {
        let out = self.fwd.range(v).len();
        match &self.rev {
            Some(rev) => out + rev.range(v).len(),
            None => out,
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v as u64, n: self.num_vertices() })
        }
    }

    /// Writes the graph as an edge list in external ids. Undirected edges
    /// are written once.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        let edges = if self.directed { self.num_arcs() } else { self.num_arcs() / 2 };
        writeln!(out, "# vertices: {} edges: {}", self.num_vertices(), edges)?;
        for u in 0..self.num_vertices() as VertexId {
            for (v, w) in self.weighted_neighbors(u, Direction::Forward) {
                if !self.directed && v < u {
                    continue;
                }
                let (a, b) = (self.ids[u as usize], self.ids[v as usize]);
                if self.is_weighted() {
                    writeln!(out, "{a} {b} {w}")?;
                } else {
                    writeln!(out, "{a} {b}")?;
                }
            }
        }
        Ok(())
    }
}

fn normalize(arcs: &mut [(VertexId, VertexId, u32)]) -> Vec<(VertexId, VertexId, u32)> {
    arcs.sort_unstable();
    let mut out: Vec<(VertexId, VertexId, u32)> = Vec::with_capacity(arcs.len());
    for &a in arcs.iter() {
        // sorted, so the first copy of (u, v) carries the smallest weight
        if out.last().is_some_and(|l| l.0 == a.0 && l.1 == a.1) {
            continue;
        }
        out.push(a);
    }
    out
}

/// Parses a whitespace-separated edge list (`u v` or `u v w` per line, `#`
/// comments, blank lines ignored) into a graph with dense ids.
pub fn load_edge_list<R: BufRead>(mut input: R, directed: bool, weighted: bool) -> Result<Graph> {
    let mut raw: Vec<(u64, u64, u32)> = Vec::new();
    let mut line = String::new();
    let mut line_no = 0;
    loop {
        line.clear();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        raw.push(parse_edge_line(text, line_no, weighted)?);
    }

    let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense = |x: u64| ids.binary_search(&x).unwrap() as VertexId;
    let edges: Vec<_> = raw.iter().map(|&(u, v, w)| (dense(u), dense(v), w)).collect();
    Graph::build(ids, edges, directed, weighted)
}

fn parse_edge_line(text: &str, line: usize, weighted: bool) -> Result<(u64, u64, u32)> {
    let fields: Vec<&str> = text.split_ascii_whitespace().collect();
    let expected = if weighted { 3 } else { 2 };
    if fields.len() != expected {
        return Err(Error::Parse {
            line,
            message: format!("expected {expected} fields, found {}", fields.len()),
        });
    }
    let id = |s: &str| {
        s.parse::<u64>().map_err(|_| Error::Parse {
            line,
            message: format!("invalid vertex id {s:?}"),
        })
    };
    let (u, v) = (id(fields[0])?, id(fields[1])?);
    let w = if weighted {
        let w: i64 = fields[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid weight {:?}", fields[2]),
        })?;
        if w < 0 {
            return Err(Error::NegativeWeight { line, weight: w });
        }
        u32::try_from(w).map_err(|_| Error::Parse {
            line,
            message: format!("weight {w} exceeds 32 bits"),
        })?
    } else {
        1
    };
    Ok((u, v, w))
}
