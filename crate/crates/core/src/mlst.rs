//! Exact minimum-leaf spanning trees.
//!
//! Two independent routes: a branch-and-bound search that grows a tree from
//! vertex 0 with include/exclude branching on frontier edges, and a pure
//! enumerator over all spanning trees. Neither shares code with the solver.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, Bits, Graph};
use crate::tree::SpanningTree;

pub const DEFAULT_ORACLE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest vertex count accepted.
    pub cap: usize,
    /// Search-node budget; `None` means unbounded.
    pub budget: Option<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_ORACLE_CAP,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinLeafTree {
    pub leaves: usize,
    pub tree: SpanningTree,
}

impl MinLeafTree {
    /// Canonical parent array rooted at vertex 0.
    pub fn parent(&self) -> Vec<Option<usize>> {
        self.tree.parent_array(0)
    }
}

pub fn min_leaf_count(g: &Graph) -> Result<usize> {
    Ok(min_leaf_tree(g, OracleConfig::default())?.leaves)
}

pub fn min_leaf_tree(g: &Graph, cfg: OracleConfig) -> Result<MinLeafTree> {
    search(g, cfg, 0)
}

/// Spanning tree with at most `k` leaves, if one exists.
pub fn has_k_ended_tree(g: &Graph, k: usize) -> Result<Option<SpanningTree>> {
    has_k_ended_tree_with(g, k, OracleConfig::default())
}

pub fn has_k_ended_tree_with(
    g: &Graph,
    k: usize,
    cfg: OracleConfig,
) -> Result<Option<SpanningTree>> {
    let best = search(g, cfg, k)?;
    Ok((best.leaves <= k).then_some(best.tree))
}

fn check_input(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::SizeCap { n: g.n(), cap });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Size of a maximum independent set.
pub fn independence_number(g: &Graph) -> usize {
    fn go(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, cand & !adj[v] & !bit(v), size + 1, best);
        if adj[v] & cand != 0 {
            go(adj, cand & !bit(v), size, best);
        }
    }
    let mut best = 0;
    go(g.adjacency(), full_mask(g.n()), 0, &mut best);
    best
}

/// Lower bound on the leaves of any spanning tree: at least 2 for `n >= 2`,
/// and `2α - (n - 1)` since the tree edges meeting an independent set are
/// distinct and every non-leaf there uses two of them.
pub fn leaf_lower_bound(g: &Graph) -> usize {
    let n = g.n();
    if n == 1 {
        return 0;
    }
    let alpha = independence_number(g);
    (2 * alpha).saturating_sub(n - 1).max(2)
}

struct Bnb {
    n: usize,
    adj: Vec<u64>,
    tdeg: Vec<u8>,
    parent: Vec<usize>,
    in_tree: u64,
    /// insertion order, used to pick the most recent tree leaf to extend
    order: Vec<usize>,
    best: usize,
    best_parent: Vec<usize>,
    stop_at: usize,
    steps: u64,
    budget: Option<u64>,
}

fn search(g: &Graph, cfg: OracleConfig, target: usize) -> Result<MinLeafTree> {
    check_input(g, cfg.cap)?;
    let n = g.n();
    if n == 1 {
        return Ok(MinLeafTree {
            leaves: 0,
            tree: SpanningTree::from_edges(g, &[])?,
        });
    }
    let lower = leaf_lower_bound(g);
    let mut s = Bnb {
        n,
        adj: g.adjacency().to_vec(),
        tdeg: vec![0; n],
        parent: vec![usize::MAX; n],
        in_tree: bit(0),
        order: vec![0],
        best: n + 1,
        best_parent: Vec::new(),
        stop_at: lower.max(target),
        steps: 0,
        budget: cfg.budget,
    };
    s.go()?;
    let edges: Vec<_> = (1..n).map(|v| (v, s.best_parent[v])).collect();
    let tree = SpanningTree::from_edges(g, &edges)?;
    debug_assert_eq!(tree.leaf_count(), s.best);
    Ok(MinLeafTree {
        leaves: s.best,
        tree,
    })
}

impl Bnb {
    fn connected(&self) -> bool {
        let all = full_mask(self.n);
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
        seen == all
    }

    fn lower_bound(&self) -> usize {
        let outside = full_mask(self.n) & !self.in_tree;
        let mut forced = 0;
        for v in Bits(self.in_tree) {
            if self.tdeg[v] <= 1 && self.adj[v] & outside == 0 {
                forced += 1;
            }
        }
        for o in Bits(outside) {
            if self.adj[o] & outside == 0 {
                forced += 1;
            }
        }
        forced
    }

    fn pick_edge(&self) -> Option<(usize, usize)> {
        let outside = full_mask(self.n) & !self.in_tree;
        let score = |b: usize| (self.adj[b] & outside).count_ones();
        let choose = |a: usize| {
            Bits(self.adj[a] & outside)
                .min_by_key(|&b| (score(b), b))
                .map(|b| (a, b))
        };
        for &a in self.order.iter().rev() {
            if self.tdeg[a] <= 1 && self.adj[a] & outside != 0 {
                return choose(a);
            }
        }
        self.order
            .iter()
            .rev()
            .find(|&&a| self.adj[a] & outside != 0)
            .and_then(|&a| choose(a))
    }

    fn go(&mut self) -> Result<()> {
        self.steps += 1;
        if let Some(b) = self.budget {
            if self.steps > b {
                return Err(Error::Budget);
            }
        }
        if self.in_tree == full_mask(self.n) {
            let leaves = self.tdeg.iter().filter(|&&d| d == 1).count();
            if leaves < self.best {
                self.best = leaves;
                self.best_parent = self.parent.clone();
            }
            return Ok(());
        }
        if self.lower_bound() >= self.best {
            return Ok(());
        }
        let Some((a, b)) = self.pick_edge() else {
            return Ok(());
        };

        // include a-b
        self.in_tree |= bit(b);
        self.tdeg[a] += 1;
        self.tdeg[b] += 1;
        self.parent[b] = a;
        self.order.push(b);
        self.go()?;
        self.order.pop();
        self.parent[b] = usize::MAX;
        self.tdeg[a] -= 1;
        self.tdeg[b] -= 1;
        self.in_tree &= !bit(b);
        if self.best <= self.stop_at {
            return Ok(());
        }

        // exclude a-b
        self.adj[a] &= !bit(b);
        self.adj[b] &= !bit(a);
        if self.connected() {
            self.go()?;
        }
        self.adj[a] |= bit(b);
        self.adj[b] |= bit(a);
        Ok(())
    }
}

/// View of a complete spanning tree handed to enumeration visitors.
pub struct TreeView<'a> {
    pub degree: &'a [u8],
    pub edges: &'a [(usize, usize)],
}

impl TreeView<'_> {
    pub fn leaf_count(&self) -> usize {
        self.degree.iter().filter(|&&d| d == 1).count()
    }
}

/// Visits every spanning tree of `g` exactly once, by include/exclude
/// branching over the edges in order. Returns the number of trees visited.
pub fn for_each_spanning_tree<F>(g: &Graph, mut visit: F) -> Result<u64>
where
    F: FnMut(&TreeView<'_>) -> ControlFlow<()>,
{
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    struct Enum<'a, F> {
        n: usize,
        edges: Vec<(usize, usize)>,
        avail: Vec<u64>,
        comp: Vec<u64>,
        degree: Vec<u8>,
        chosen: Vec<(usize, usize)>,
        count: u64,
        visit: &'a mut F,
    }
    impl<F: FnMut(&TreeView<'_>) -> ControlFlow<()>> Enum<'_, F> {
        fn connected(&self) -> bool {
            let mut seen = 1u64;
            let mut frontier = 1u64;
            while frontier != 0 {
                let mut next = 0;
                for v in Bits(frontier) {
                    next |= self.avail[v];
                }
                next &= !seen;
                seen |= next;
                frontier = next;
            }
            seen == full_mask(self.n)
        }

        fn go(&mut self, i: usize) -> ControlFlow<()> {
            if self.chosen.len() + 1 == self.n {
                self.count += 1;
                return (self.visit)(&TreeView {
                    degree: &self.degree,
                    edges: &self.chosen,
                });
            }
            let mut i = i;
            // skip edges that would close a cycle
            while self.comp[self.edges[i].0] & bit(self.edges[i].1) != 0 {
                i += 1;
            }
            let (a, b) = self.edges[i];

            let (ca, cb) = (self.comp[a], self.comp[b]);
            let merged = ca | cb;
            for v in Bits(merged) {
                self.comp[v] = merged;
            }
            self.degree[a] += 1;
            self.degree[b] += 1;
            self.chosen.push((a, b));
            let flow = self.go(i + 1);
            self.chosen.pop();
            self.degree[a] -= 1;
            self.degree[b] -= 1;
            for v in Bits(ca) {
                self.comp[v] = ca;
            }
            for v in Bits(cb) {
                self.comp[v] = cb;
            }
            flow?;

            self.avail[a] &= !bit(b);
            self.avail[b] &= !bit(a);
            let flow = if self.connected() {
                self.go(i + 1)
            } else {
                ControlFlow::Continue(())
            };
            self.avail[a] |= bit(b);
            self.avail[b] |= bit(a);
            flow
        }
    }
    let n = g.n();
    let mut e = Enum {
        n,
        edges: g.edges(),
        avail: g.adjacency().to_vec(),
        comp: (0..n).map(bit).collect(),
        degree: vec![0; n],
        chosen: Vec::with_capacity(n),
        count: 0,
        visit: &mut visit,
    };
    let _ = e.go(0);
    Ok(e.count)
}

/// Minimum leaf count by visiting every spanning tree. Refuses graphs whose
/// spanning-tree count exceeds `max_trees`.
pub fn min_leaf_tree_enumerate(g: &Graph, max_trees: u128) -> Result<MinLeafTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let count = spanning_tree_count(g);
    if count > max_trees {
        return Err(Error::Budget);
    }
    if g.n() == 1 {
        return Ok(MinLeafTree {
            leaves: 0,
            tree: SpanningTree::from_edges(g, &[])?,
        });
    }
    let mut best = usize::MAX;
    let mut best_edges = Vec::new();
    for_each_spanning_tree(g, |t| {
        let l = t.leaf_count();
        if l < best {
            best = l;
            best_edges = t.edges.to_vec();
        }
        ControlFlow::Continue(())
    })?;
    Ok(MinLeafTree {
        leaves: best,
        tree: SpanningTree::from_edges(g, &best_edges)?,
    })
}

/// Number of spanning trees via the matrix-tree theorem, evaluated with
/// fraction-free Gaussian elimination.
pub fn spanning_tree_count(g: &Graph) -> u128 {
    let n = g.n();
    if n == 1 {
        return 1;
    }
    let m = n - 1;
    let deg = g.degree_sequence();
    let mut a: Vec<Vec<i128>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    if i == j {
                        deg[i] as i128
                    } else if g.has_edge(i, j) {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[m - 1][m - 1]) as u128
}
