//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's algorithms; only `Graph` accessors.

#![allow(dead_code)]

use kended::Graph;

/// Connected graphs on n = 1..=8 vertices up to isomorphism (OEIS A001349).
pub const CONNECTED_UNLABELED: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

/// Connected labeled graphs on n = 1..=5 vertices (OEIS A001187).
pub const CONNECTED_LABELED: [usize; 5] = [1, 1, 4, 38, 728];

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

/// σ₂ by a double loop; `None` stands for infinity.
pub fn sigma2(g: &Graph) -> Option<usize> {
    let a = adjacency(g);
    let deg: Vec<usize> = a.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let mut best: Option<usize> = None;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !a[u][v] {
                let s = deg[u] + deg[v];
                best = Some(best.map_or(s, |b| b.min(s)));
            }
        }
    }
    best
}

pub fn hypothesis_holds(g: &Graph, k: usize) -> bool {
    match sigma2(g) {
        None => true,
        Some(s) => s + k >= g.n(),
    }
}

/// Number of vertices on a longest path, by plain DFS from every vertex.
pub fn longest_path_len(g: &Graph) -> usize {
    fn dfs(a: &[Vec<bool>], v: usize, seen: &mut Vec<bool>, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        for w in 0..a.len() {
            if a[v][w] && !seen[w] {
                seen[w] = true;
                dfs(a, w, seen, len + 1, best);
                seen[w] = false;
            }
        }
    }
    let a = adjacency(g);
    let mut best = 0;
    for s in 0..g.n() {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        dfs(&a, s, &mut seen, 1, &mut best);
    }
    best
}

/// Checks that `edges` form a spanning tree of `g` and returns its degrees.
pub fn check_spanning_tree(g: &Graph, edges: &[(usize, usize)]) -> Result<Vec<usize>, String> {
    let n = g.n();
    if edges.len() + 1 != n {
        return Err(format!("{} edges for {n} vertices", edges.len()));
    }
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(format!("{u}-{v} is not an edge of the graph"));
        }
        let (ru, rv) = (find(&mut root, u), find(&mut root, v));
        if ru == rv {
            return Err(format!("{u}-{v} closes a cycle"));
        }
        root[ru] = rv;
        deg[u] += 1;
        deg[v] += 1;
    }
    Ok(deg)
}

pub fn leaves(deg: &[usize]) -> usize {
    deg.iter().filter(|&&d| d == 1).count()
}

pub fn branch_vertices(deg: &[usize]) -> usize {
    deg.iter().filter(|&&d| d >= 3).count()
}

/// Is `g` exactly `K_{|A|,|B|}` plus edges inside `A`, with `|B| - |A| = k`?
pub fn is_h_with_parts(g: &Graph, a: &[usize], b: &[usize], m: usize, k: usize) -> bool {
    if a.len() != m || b.len() != m + k || a.len() + b.len() != g.n() || k < 2 || m < 1 {
        return false;
    }
    for &x in b {
        for &y in b {
            if x != y && g.has_edge(x, y) {
                return false;
            }
        }
        for &y in a {
            if !g.has_edge(x, y) {
                return false;
            }
        }
    }
    true
}

/// Every `(A, B)` split that exhibits `g` as some `H(m, k, S)`, by trying all
/// subsets as `A`. Returns `(A-mask, m, k)`.
pub fn h_bipartitions(g: &Graph) -> Vec<(u64, usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        if b.len() < a.len() + 2 {
            continue;
        }
        let (m, k) = (a.len(), b.len() - a.len());
        if is_h_with_parts(g, &a, &b, m, k) {
            out.push((mask, m, k));
        }
    }
    out
}

/// All labeled trees on `n ≥ 2` vertices via Prüfer sequences; the callback
/// receives the degree sequence.
pub fn for_each_labeled_tree(n: usize, mut visit: impl FnMut(&[usize])) {
    assert!(n >= 2);
    if n == 2 {
        visit(&[1, 1]);
        return;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        let mut deg = vec![1usize; n];
        for &s in &seq {
            deg[s] += 1;
        }
        visit(&deg);
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            return;
        }
    }
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (w, s) in seen.iter_mut().enumerate() {
            if g.has_edge(v, w) && !*s {
                *s = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
