//! Undirected simple graphs on at most 64 vertices, stored as one neighbor
//! word per vertex.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A subset of `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_iter_checked<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Result<Self> {
        let mut bits = 0;
        for v in it {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            bits |= bit(v);
        }
        Ok(VertexSet(bits))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in it {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Minimum degree sum over non-adjacent pairs. `Infinite` when every pair is
/// adjacent; it compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma2 {
    Finite(usize),
    Infinite,
}

impl Sigma2 {
    pub fn at_least(self, t: isize) -> bool {
        match self {
            Sigma2::Infinite => true,
            Sigma2::Finite(s) => s as isize >= t,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Sigma2::Finite(s) => Some(s),
            Sigma2::Infinite => None,
        }
    }
}

impl Ord for Sigma2 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Sigma2::Finite(a), Sigma2::Finite(b)) => a.cmp(b),
            (Sigma2::Finite(_), Sigma2::Infinite) => Ordering::Less,
            (Sigma2::Infinite, Sigma2::Finite(_)) => Ordering::Greater,
            (Sigma2::Infinite, Sigma2::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Sigma2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sigma2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma2::Finite(s) => write!(f, "{s}"),
            Sigma2::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Sigma2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sigma2::Finite(v) => s.serialize_u64(*v as u64),
            Sigma2::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency words, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        for (u, &row) in adj.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                let vertex = (row & !full_mask(n)).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if row & bit(u) != 0 {
                return Err(Error::LoopEdge(u));
            }
            for v in Bits(row) {
                if adj[v] & bit(u) == 0 {
                    return Err(Error::Precondition(format!("asymmetric adjacency {u}-{v}")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.adj[u] = full_mask(n) & !bit(u);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edge_list(n, &edges)
    }

    /// `K_{a,b}` with the `a`-side on `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut g = Graph::empty(a + b)?;
        for x in 0..a {
            for y in a..a + b {
                g.add_edge(x, y)?;
            }
        }
        Ok(g)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edge_list(10, &edges).expect("static edge list")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet(full_mask(self.n))
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn adj_word(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    #[inline]
    pub(crate) fn deg(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.deg(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn sigma2(&self) -> Sigma2 {
        let all = full_mask(self.n);
        let mut best = Sigma2::Infinite;
        for u in 0..self.n {
            // non-neighbors above u
            let non = all & !self.adj[u] & !full_mask(u + 1);
            if non == 0 {
                continue;
            }
            let du = self.deg(u);
            let dmin = Bits(non).map(|v| self.deg(v)).min().unwrap_or(0);
            let cand = Sigma2::Finite(du + dmin);
            if cand < best {
                best = cand;
            }
        }
        best
    }

    /// Vertices reachable from `start` in `within` (which must contain `start`).
    pub(crate) fn reach_within(&self, start: u64, within: u64) -> u64 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach_within(1, full_mask(self.n)) == full_mask(self.n)
    }

    pub fn is_independent_set(&self, x: VertexSet) -> bool {
        x.iter().all(|v| self.adj[v] & x.0 == 0)
    }

    /// Breadth-first distance from `z` to the nearest vertex of `path`.
    pub fn dist_to_vertices(&self, z: usize, targets: VertexSet) -> Result<usize> {
        self.check_vertex(z)?;
        if targets.is_empty() {
            return Err(Error::Precondition("empty target set".into()));
        }
        let mut seen = targets.0;
        let mut frontier = targets.0;
        let mut d = 0;
        loop {
            if frontier & bit(z) != 0 {
                return Ok(d);
            }
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            if next == 0 {
                return Err(Error::Unreachable(z));
            }
            seen |= next;
            frontier = next;
            d += 1;
        }
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Precondition("permutation length mismatch".into()));
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn parse_graph6(line: &str) -> Result<Self> {
        let line = line.trim_end_matches(['\n', '\r']);
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        let bytes = line.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Graph6("empty input".into()));
        }
        for &b in bytes {
            if !(63..=126).contains(&b) {
                return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
            }
        }
        let (n, body) = if bytes[0] != 126 {
            ((bytes[0] - 63) as usize, &bytes[1..])
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            return Err(Error::Graph6("malformed length prefix".into()));
        };
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let nbits = n * (n - 1) / 2;
        let expected = nbits.div_ceil(6);
        if body.len() != expected {
            return Err(Error::Graph6(format!(
                "expected {expected} data bytes for n = {n}, found {}",
                body.len()
            )));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6] - 63;
                if byte & (0x20 >> (k % 6)) != 0 {
                    g.adj[i] |= bit(j);
                    g.adj[j] |= bit(i);
                }
                k += 1;
            }
        }
        if nbits % 6 != 0 {
            let last = body[expected - 1] - 63;
            let pad = 6 - nbits % 6;
            if last & ((1u8 << pad) - 1) != 0 {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = Vec::new();
        if n < 63 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 0x3f) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                acc <<= 1;
                if self.has_edge(i, j) {
                    acc |= 1;
                }
                k += 1;
                if k == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push((acc << (6 - k)) + 63);
        }
        String::from_utf8(out).expect("graph6 is ascii")
    }

    /// Edge-list text: first line `n m`, then `m` lines `u v` (0-based).
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::EdgeList("missing header".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::EdgeList(format!(
                "header promises {m} edges, found {}",
                edges.len()
            )));
        }
        if lines.next().is_some() {
            return Err(Error::EdgeList("trailing content after edges".into()));
        }
        Graph::from_edge_list(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::EdgeList(format!(
            "expected two integers, got {line:?}"
        ))),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_graph6())
    }
}
