//! The exceptional family `H(m, k, S)`: `K_{m,m+k}` with parts `A` (size
//! `m`) and `B` (size `m + k`), plus an arbitrary edge set `S` inside `A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Sigma2, VertexSet, MAX_VERTICES};
use crate::mlst::{self, OracleConfig};
use crate::tree::{SpanningTree, TreeJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HParams {
    pub m: usize,
    pub k: usize,
    pub extra_edges: Vec<(usize, usize)>,
}

impl HParams {
    pub fn new(m: usize, k: usize, extra_edges: Vec<(usize, usize)>) -> Result<Self> {
        let p = HParams { m, k, extra_edges };
        p.validate()?;
        Ok(p)
    }

    pub fn plain(m: usize, k: usize) -> Result<Self> {
        HParams::new(m, k, Vec::new())
    }

    pub fn n(&self) -> usize {
        2 * self.m + self.k
    }

    fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::HParams("m must be at least 1".into()));
        }
        if self.k < 2 {
            return Err(Error::HParams("k must be at least 2".into()));
        }
        if self.n() > MAX_VERTICES {
            return Err(Error::HParams(format!("2m + k = {} exceeds 64", self.n())));
        }
        for &(a, b) in &self.extra_edges {
            if a == b || a >= self.m || b >= self.m {
                return Err(Error::HParams(format!(
                    "extra edge {a}-{b} is not a pair of distinct A-vertices"
                )));
            }
        }
        Ok(())
    }
}

/// `A = 0..m`, `B = m..2m+k`.
pub fn construct_h(p: &HParams) -> Result<Graph> {
    p.validate()?;
    let mut g = Graph::complete_bipartite(p.m, p.m + p.k)?;
    for &(a, b) in &p.extra_edges {
        g.add_edge(a, b)?;
    }
    Ok(g)
}

/// Witness that a graph is some `H(m, k, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HCertificate {
    pub m: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: VertexSet,
    #[serde(rename = "B")]
    pub b: VertexSet,
}

impl HCertificate {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: &str| Err(Error::Precondition(format!("certificate: {msg}")));
        if self.k < 2 {
            return bad("k below 2");
        }
        if !self.a.intersection(self.b).is_empty() || self.a.union(self.b) != g.vertices() {
            return bad("A and B do not partition V");
        }
        if self.a.len() != self.m || self.b.len() != self.m + self.k {
            return bad("part sizes disagree with (m, k)");
        }
        if !g.is_independent_set(self.b) {
            return bad("B is not independent");
        }
        if self.b.iter().any(|v| g.neighbors(v) != self.a) {
            return bad("some B-vertex misses part of A");
        }
        Ok(())
    }
}

/// Degree-based recognition. A-vertices have degree at least `m + k > m`
/// and B-vertices exactly `m`, so `B` must be the degree-`m` class.
pub fn recognize_h(g: &Graph) -> Option<HCertificate> {
    let n = g.n();
    if n < 4 {
        return None;
    }
    for m in 1..=(n - 2) / 2 {
        let b: VertexSet = (0..n).filter(|&v| g.neighbors(v).len() == m).collect();
        if b.len() != n - m || !g.is_independent_set(b) {
            continue;
        }
        let a = g.vertices().difference(b);
        if b.iter().all(|v| g.neighbors(v) == a) {
            return Some(HCertificate {
                m,
                k: n - 2 * m,
                a,
                b,
            });
        }
    }
    None
}

/// The `(k+1)`-leaf caterpillar of `H(m, k, S)`: spine `b_0 a_0 b_1 ... a_{m-1}
/// b_m`, remaining B-vertices hung on `a_0`.
pub fn upper_bound_tree(p: &HParams) -> Result<SpanningTree> {
    let g = construct_h(p)?;
    let (m, k) = (p.m, p.k);
    let mut edges = Vec::with_capacity(g.n() - 1);
    for i in 0..m {
        edges.push((m + i, i));
        edges.push((i, m + i + 1));
    }
    for extra in m + m + 1..2 * m + k {
        edges.push((extra, 0));
    }
    SpanningTree::from_edges(&g, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub sigma2: Sigma2,
    /// `σ₂ = 2m = n - k`
    pub sigma2_holds: bool,
    /// Leaf lower bound from the edge count on `B`.
    pub counting_lower_bound: usize,
    /// Exact minimum from the oracle, when within its cap.
    pub min_leaves: Option<usize>,
    pub upper_bound_witness: TreeJson,
    pub upper_bound_leaves: usize,
    /// All available evidence agrees with a minimum of exactly `k + 1`.
    pub holds: bool,
}

/// Lower bound from the edge count: a spanning tree has `n - 1` edges, each
/// meeting B at most once, and every non-leaf of B uses two of them.
pub fn counting_lower_bound(p: &HParams) -> usize {
    let n = p.n();
    let b = p.m + p.k;
    (2 * b).saturating_sub(n - 1)
}

pub fn lemma_check(p: &HParams, cfg: OracleConfig) -> Result<LemmaReport> {
    let g = construct_h(p)?;
    let n = g.n();
    let sigma2 = g.sigma2();
    let sigma2_holds = sigma2 == Sigma2::Finite(2 * p.m) && 2 * p.m == n - p.k;
    let lower = counting_lower_bound(p);
    let witness = upper_bound_tree(p)?;
    let upper = witness.leaf_count();
    let min_leaves = if n <= cfg.cap {
        Some(mlst::min_leaf_tree(&g, cfg)?.leaves)
    } else {
        None
    };
    let holds = sigma2_holds
        && lower == p.k + 1
        && upper == p.k + 1
        && min_leaves.is_none_or(|l| l == p.k + 1);
    Ok(LemmaReport {
        m: p.m,
        k: p.k,
        n,
        sigma2,
        sigma2_holds,
        counting_lower_bound: lower,
        min_leaves,
        upper_bound_witness: witness.to_json(),
        upper_bound_leaves: upper,
        holds,
    })
}
