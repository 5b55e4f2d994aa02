//! Paths, spanning trees and caterpillars over a host [`Graph`], together
//! with the path and tree exchanges that drive the constructive solver.
//!
//! Every constructor validates against the host graph. Exchanges check their
//! preconditions and re-validate what they build.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph, VertexSet};

/// A simple path `p_0 p_1 ... p_{l-1}`, oriented from `p_0` to `p_{l-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = 0u64;
        for &v in &verts {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: g.n(),
                });
            }
            if seen & bit(v) != 0 {
                return Err(Error::InvalidPath(format!("vertex {v} repeated")));
            }
            seen |= bit(v);
        }
        for w in verts.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "{}-{} is not an edge",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { verts })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        self.verts[self.verts.len() - 1]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().copied().collect()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.verts.iter().position(|&v| v == x)
    }

    /// `x⁺`, the vertex after `x`.
    pub fn successor(&self, x: usize) -> Option<usize> {
        self.position(x)
            .and_then(|i| self.verts.get(i + 1).copied())
    }

    /// `x⁻`, the vertex before `x`.
    pub fn predecessor(&self, x: usize) -> Option<usize> {
        self.position(x)
            .and_then(|i| i.checked_sub(1))
            .map(|i| self.verts[i])
    }

    pub fn reversed(&self) -> Path {
        let mut verts = self.verts.clone();
        verts.reverse();
        Path { verts }
    }

    /// `N(x)⁻`: predecessors of the neighbors of `x` that lie on the path.
    pub fn predecessors_of(&self, g: &Graph, x: usize) -> VertexSet {
        let nx = g.neighbors(x);
        self.verts
            .windows(2)
            .filter(|w| nx.contains(w[1]))
            .map(|w| w[0])
            .collect()
    }

    /// True when no neighbor of either endpoint lies off the path.
    pub fn is_maximal(&self, g: &Graph) -> bool {
        let on = self.vertex_set();
        g.neighbors(self.first()).difference(on).is_empty()
            && g.neighbors(self.last()).difference(on).is_empty()
    }

    pub(crate) fn from_unchecked(verts: Vec<usize>) -> Path {
        Path { verts }
    }
}

/// A spanning tree of a host graph, stored as tree adjacency words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    adj: Vec<u64>,
}

impl SpanningTree {
    pub fn from_edges(g: &Graph, edges: &[(usize, usize)]) -> Result<Self> {
        let n = g.n();
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: a.max(b),
                    n,
                });
            }
            if !g.has_edge(a, b) {
                return Err(Error::InvalidTree(format!("{a}-{b} is not a host edge")));
            }
            if adj[a] & bit(b) != 0 {
                return Err(Error::InvalidTree(format!("edge {a}-{b} repeated")));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        let t = SpanningTree { adj };
        if !t.is_connected() {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(t)
    }

    /// Builds from a parent array; the root has `None`.
    pub fn from_parents(g: &Graph, parent: &[Option<usize>]) -> Result<Self> {
        if parent.len() != g.n() {
            return Err(Error::InvalidTree("parent array length mismatch".into()));
        }
        let edges: Vec<_> = parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        SpanningTree::from_edges(g, &edges)
    }

    pub fn from_path(g: &Graph, p: &Path) -> Result<Self> {
        let edges: Vec<_> = p.vertices().windows(2).map(|w| (w[0], w[1])).collect();
        SpanningTree::from_edges(g, &edges)
    }

    fn is_connected(&self) -> bool {
        let n = self.adj.len();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        seen.count_ones() as usize == n
    }

    /// Re-checks every tree edge against `g` and the spanning property.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        SpanningTree::from_edges(g, &self.edges()).map(|_| ())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.adj.len().saturating_sub(1));
        for (u, &row) in self.adj.iter().enumerate() {
            for v in Bits(row) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn leaves(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn branch_vertices(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.degree(v) >= 3).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Parent array from a breadth-first walk rooted at `root`, visiting
    /// children in increasing vertex order.
    pub fn parent_array(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n()];
        let mut seen = bit(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for c in Bits(self.adj[v] & !seen) {
                seen |= bit(c);
                parent[c] = Some(v);
                queue.push_back(c);
            }
        }
        parent
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            root: 0,
            parent: self.parent_array(0),
            leaves: self.leaves().to_vec(),
        }
    }

    fn with_edge_swapped(&self, add: (usize, usize), remove: (usize, usize)) -> SpanningTree {
        let mut adj = self.adj.clone();
        adj[remove.0] &= !bit(remove.1);
        adj[remove.1] &= !bit(remove.0);
        adj[add.0] |= bit(add.1);
        adj[add.1] |= bit(add.0);
        SpanningTree { adj }
    }
}

/// Parent-array serialization rooted at vertex 0.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TreeJson {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub leaves: Vec<usize>,
}

/// A spine path plus leaves hung directly off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caterpillar {
    spine: Path,
    attachments: BTreeMap<usize, usize>,
}

impl Caterpillar {
    pub fn new(g: &Graph, spine: Path, attachments: BTreeMap<usize, usize>) -> Result<Self> {
        let on = spine.vertex_set();
        for (&leaf, &at) in &attachments {
            if on.contains(leaf) {
                return Err(Error::InvalidTree(format!(
                    "attached vertex {leaf} is on the spine"
                )));
            }
            if !on.contains(at) {
                return Err(Error::InvalidTree(format!(
                    "attachment point {at} is off the spine"
                )));
            }
            if !g.has_edge(leaf, at) {
                return Err(Error::InvalidTree(format!(
                    "{leaf}-{at} is not a host edge"
                )));
            }
        }
        Ok(Caterpillar { spine, attachments })
    }

    pub fn spine(&self) -> &Path {
        &self.spine
    }

    pub fn attachments(&self) -> &BTreeMap<usize, usize> {
        &self.attachments
    }

    pub fn attachment_of(&self, leaf: usize) -> Option<usize> {
        self.attachments.get(&leaf).copied()
    }

    pub fn to_tree(&self, g: &Graph) -> Result<SpanningTree> {
        let mut edges: Vec<_> = self
            .spine
            .vertices()
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect();
        edges.extend(self.attachments.iter().map(|(&l, &a)| (l, a)));
        SpanningTree::from_edges(g, &edges)
    }
}

/// Off-path vertices at distance at least two from the spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemoteVertices(pub VertexSet);

/// Hangs every off-path vertex on its lowest-numbered spine neighbor, or
/// reports the vertices that have no spine neighbor.
pub fn caterpillar_from_path(
    g: &Graph,
    p: &Path,
) -> std::result::Result<Caterpillar, RemoteVertices> {
    let on = p.vertex_set();
    let mut attachments = BTreeMap::new();
    let mut remote = VertexSet::EMPTY;
    for w in g.vertices().difference(on).iter() {
        match g.neighbors(w).intersection(on).iter().next() {
            Some(at) => {
                attachments.insert(w, at);
            }
            None => remote.insert(w),
        }
    }
    if !remote.is_empty() {
        return Err(RemoteVertices(remote));
    }
    Ok(Caterpillar {
        spine: p.clone(),
        attachments,
    })
}

/// Breadth-first spanning tree grown outward from the path, keeping every
/// path edge. Each off-path vertex takes its lowest-numbered neighbor in the
/// previous layer as parent, so the tree has at most `n - |P| + 2` leaves.
pub fn tree_around_path(g: &Graph, p: &Path) -> Result<SpanningTree> {
    let mut edges: Vec<_> = p.vertices().windows(2).map(|w| (w[0], w[1])).collect();
    let mut seen = p.vertex_set().0;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for w in Bits(g.vertices().0 & !seen) {
            if let Some(parent) = Bits(g.adj_word(w) & frontier).next() {
                edges.push((w, parent));
                next |= bit(w);
            }
        }
        seen |= next;
        frontier = next;
    }
    if seen != g.vertices().0 {
        return Err(Error::Disconnected);
    }
    SpanningTree::from_edges(g, &edges)
}

/// Reattaches leaf `xj` to the adjacent leaf `xi`: `T + xi xj - z xj` where
/// `z` is the attachment point of `xj`.
pub fn surgery_leaf_merge(
    g: &Graph,
    cat: &Caterpillar,
    xi: usize,
    xj: usize,
) -> Result<SpanningTree> {
    if xi == xj {
        return Err(Error::Precondition("leaves must be distinct".into()));
    }
    let z = cat
        .attachment_of(xj)
        .ok_or_else(|| Error::Precondition(format!("{xj} is not an attached leaf")))?;
    if cat.attachment_of(xi).is_none() {
        return Err(Error::Precondition(format!("{xi} is not an attached leaf")));
    }
    if !g.has_edge(xi, xj) {
        return Err(Error::Precondition(format!("{xi}-{xj} is not an edge")));
    }
    let t = cat.to_tree(g)?;
    let merged = t.with_edge_swapped((xi, xj), (z, xj));
    merged.validate(g)?;
    if merged.leaf_count() + 1 != t.leaf_count() {
        return Err(Error::Precondition(format!(
            "removing {z}-{xj} turns {z} into a leaf"
        )));
    }
    Ok(merged)
}

/// `P + x y + u y⁺ - y y⁺`: walks `x, y, y⁻, ..., u, y⁺, ..., v`.
pub fn extend_path_offpath(g: &Graph, p: &Path, x: usize, y: usize) -> Result<Path> {
    if p.vertex_set().contains(x) {
        return Err(Error::Precondition(format!("{x} lies on the path")));
    }
    if !g.has_edge(x, y) {
        return Err(Error::Precondition(format!("{x}-{y} is not an edge")));
    }
    let i = p
        .position(y)
        .ok_or_else(|| Error::Precondition(format!("{y} is not on the path")))?;
    let u = p.first();
    let yp = *p
        .vertices()
        .get(i + 1)
        .ok_or_else(|| Error::Precondition(format!("{y} has no successor")))?;
    if !g.has_edge(u, yp) {
        return Err(Error::Precondition(format!("{y} is not in N(u)⁻")));
    }
    let vs = p.vertices();
    let mut verts = Vec::with_capacity(vs.len() + 1);
    verts.push(x);
    verts.extend(vs[..=i].iter().rev());
    verts.extend(&vs[i + 1..]);
    grown_by_one(g, p, verts)
}

/// Splices `x1` between the consecutive path vertices `y` and `z`.
pub fn extend_path_bridge(g: &Graph, p: &Path, x1: usize, y: usize, z: usize) -> Result<Path> {
    if p.vertex_set().contains(x1) {
        return Err(Error::Precondition(format!("{x1} lies on the path")));
    }
    let (iy, iz) = match (p.position(y), p.position(z)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Precondition(format!("{y} or {z} not on the path"))),
    };
    if iy.abs_diff(iz) != 1 {
        return Err(Error::Precondition(format!("{y}{z} is not a path edge")));
    }
    if !g.has_edge(x1, y) || !g.has_edge(x1, z) {
        return Err(Error::Precondition(format!(
            "{x1} is not adjacent to both {y} and {z}"
        )));
    }
    let cut = iy.max(iz);
    let mut verts = p.vertices().to_vec();
    verts.insert(cut, x1);
    grown_by_one(g, p, verts)
}

/// The cycle `P + u z_{2i+1} + z_{2i} z_{2j} + z_{2j-1} v - z_{2i} z_{2i+1} -
/// z_{2j-1} z_{2j}` on the vertex set of `P`, listed in cyclic order.
pub fn crossing_cycle(g: &Graph, p: &Path, i: usize, j: usize) -> Result<Vec<usize>> {
    let z = p.vertices();
    let last = z.len() - 1;
    if i >= j || 2 * j > last {
        return Err(Error::Precondition(format!(
            "indices i = {i}, j = {j} invalid for a path of {} vertices",
            z.len()
        )));
    }
    let (a, b) = (2 * i, 2 * j);
    if !g.has_edge(z[0], z[a + 1]) {
        return Err(Error::Precondition(format!(
            "u is not adjacent to z_{}",
            a + 1
        )));
    }
    if !g.has_edge(z[a], z[b]) {
        return Err(Error::Precondition(format!("z_{a} z_{b} is not an edge")));
    }
    if !g.has_edge(z[b - 1], z[last]) {
        return Err(Error::Precondition(format!(
            "z_{} is not adjacent to v",
            b - 1
        )));
    }
    let mut cycle = Vec::with_capacity(z.len());
    cycle.extend(z[..=a].iter().rev());
    cycle.extend(&z[a + 1..b]);
    cycle.extend(z[b..].iter().rev());
    check_cycle(g, &cycle)?;
    Ok(cycle)
}

/// Builds [`crossing_cycle`] and opens it at an off-path vertex, producing a
/// path one vertex longer than `p`.
pub fn rotate_cycle_crossing(g: &Graph, p: &Path, i: usize, j: usize) -> Result<Path> {
    let cycle = crossing_cycle(g, p, i, j)?;
    extend_from_cycle(g, p, &cycle)
}

/// A cycle through exactly the vertices of `p`, when `uv` is an edge or some
/// `y ∈ N(u)⁻ ∩ N(v)` exists.
pub fn spanning_cycle_of_path(g: &Graph, p: &Path) -> Option<Vec<usize>> {
    let z = p.vertices();
    let (u, v) = (p.first(), p.last());
    if z.len() >= 3 && g.has_edge(u, v) {
        return Some(z.to_vec());
    }
    let i = (0..z.len().saturating_sub(1)).find(|&i| {
        z.len() >= 3 && g.has_edge(u, z[i + 1]) && g.has_edge(z[i], v) && i + 1 != z.len() - 1
    })?;
    let mut cycle = Vec::with_capacity(z.len());
    cycle.extend(&z[..=i]);
    cycle.extend(z[i + 1..].iter().rev());
    debug_assert!(check_cycle(g, &cycle).is_ok());
    Some(cycle)
}

/// Opens a cycle on `V(p)` at the lowest-numbered off-cycle vertex that has a
/// neighbor on it.
pub fn extend_from_cycle(g: &Graph, p: &Path, cycle: &[usize]) -> Result<Path> {
    check_cycle(g, cycle)?;
    let on: VertexSet = cycle.iter().copied().collect();
    if on != p.vertex_set() {
        return Err(Error::Precondition("cycle does not cover the path".into()));
    }
    let w = g
        .vertices()
        .difference(on)
        .iter()
        .find(|&w| !g.neighbors(w).intersection(on).is_empty())
        .ok_or_else(|| Error::Precondition("no off-path vertex is adjacent to the cycle".into()))?;
    let at = cycle
        .iter()
        .position(|&c| g.has_edge(w, c))
        .expect("w has a cycle neighbor");
    let mut verts = Vec::with_capacity(cycle.len() + 1);
    verts.push(w);
    verts.extend(&cycle[at..]);
    verts.extend(&cycle[..at]);
    grown_by_one(g, p, verts)
}

fn check_cycle(g: &Graph, cycle: &[usize]) -> Result<()> {
    if cycle.len() < 3 {
        return Err(Error::Precondition(
            "cycle needs at least 3 vertices".into(),
        ));
    }
    Path::new(g, cycle.to_vec())?;
    let (a, b) = (cycle[0], cycle[cycle.len() - 1]);
    if !g.has_edge(a, b) {
        return Err(Error::Precondition(format!(
            "cycle does not close: {b}-{a}"
        )));
    }
    Ok(())
}

fn grown_by_one(g: &Graph, old: &Path, verts: Vec<usize>) -> Result<Path> {
    let p = Path::new(g, verts)?;
    if p.len() != old.len() + 1 {
        return Err(Error::InvalidPath(format!(
            "expected {} vertices, built {}",
            old.len() + 1,
            p.len()
        )));
    }
    Ok(p)
}
