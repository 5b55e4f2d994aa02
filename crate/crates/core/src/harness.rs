//! Exhaustive and randomized verification sweeps.
//!
//! Graphs come either from the built-in enumerator (all connected graphs on
//! `n` vertices, labeled or one per isomorphism class) or from graph6 input.
//! Per-graph work is independent; reports merge associatively and are
//! sorted before output so the result does not depend on scheduling.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, Bits, Graph, VertexSet};
use crate::hfamily::{construct_h, lemma_check, recognize_h, HParams, LemmaReport};
use crate::mlst::{self, OracleConfig};
use crate::solver::{solve, Mode, SolveOutcome};

/// Largest `n` accepted by the built-in enumerator.
pub const BUILTIN_MAX_N: usize = 8;

/// Connected graphs on `n = 1..=8` vertices up to isomorphism.
pub const CONNECTED_COUNTS: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

// ---------------------------------------------------------------------------
// canonical labeling

/// Ordered partition refined until every vertex in a cell sees the same
/// number of neighbors in every cell. Cells split in signature order, so the
/// result commutes with relabeling.
fn refine(adj: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0, |m, &v| m | bit(v)))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn encode(adj: &[u64], order: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..order.len() {
        for i in 0..j {
            code <<= 1;
            if adj[order[i]] & bit(order[j]) != 0 {
                code |= 1;
            }
        }
    }
    code
}

/// Canonical code: the lexicographically largest upper-triangle bit string
/// over all leaves of the individualization-refinement tree. Graphs on up to
/// 16 vertices.
pub fn canonical_code(g: &Graph) -> Result<u128> {
    if g.n() > 16 {
        return Err(Error::SizeCap { n: g.n(), cap: 16 });
    }
    fn search(adj: &[u64], cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
        let cells = refine(adj, cells);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let code = encode(adj, &order);
                if best.is_none_or(|b| code > b) {
                    *best = Some(code);
                }
            }
            Some(ci) => {
                for &v in &cells[ci] {
                    let mut next = cells[..ci].to_vec();
                    next.push(vec![v]);
                    next.push(cells[ci].iter().copied().filter(|&w| w != v).collect());
                    next.extend(cells[ci + 1..].iter().cloned());
                    search(adj, next, best);
                }
            }
        }
    }
    let mut best = None;
    search(g.adjacency(), vec![(0..g.n()).collect()], &mut best);
    Ok(best.expect("at least one leaf"))
}

fn decode(n: usize, code: u128) -> Graph {
    let mut g = Graph::empty(n).expect("n in range");
    let total = n * (n - 1) / 2;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                g.add_edge(i, j).expect("in range");
            }
            k += 1;
        }
    }
    g
}

/// One representative per isomorphism class of all graphs on `n` vertices,
/// in canonical form and sorted by canonical code. Every graph on `n`
/// vertices arises from one on `n - 1` by adding a vertex.
pub fn all_graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > BUILTIN_MAX_N + 2 {
        return Err(Error::SizeCap {
            n,
            cap: BUILTIN_MAX_N + 2,
        });
    }
    let mut level: BTreeSet<u128> = BTreeSet::from([0]);
    for size in 2..=n {
        let prev: Vec<Graph> = level.iter().map(|&c| decode(size - 1, c)).collect();
        let next: BTreeSet<u128> = prev
            .par_iter()
            .flat_map_iter(|h| {
                (0..1u64 << (size - 1)).map(move |nbrs| {
                    let mut adj = h.adjacency().to_vec();
                    adj.push(nbrs);
                    for v in Bits(nbrs) {
                        adj[v] |= bit(size - 1);
                    }
                    let g = Graph::from_adjacency(adj).expect("symmetric by construction");
                    canonical_code(&g).expect("n within canonical cap")
                })
            })
            .collect();
        level = next;
    }
    Ok(level.into_iter().map(|c| decode(n, c)).collect())
}

/// Connected graphs on `n` vertices: every labeled graph when `dedup` is
/// false, one per isomorphism class otherwise.
pub fn enumerate_connected(n: usize, dedup: bool) -> Result<Vec<Graph>> {
    if n == 0 || n > BUILTIN_MAX_N {
        return Err(Error::SizeCap {
            n,
            cap: BUILTIN_MAX_N,
        });
    }
    if dedup {
        return Ok(all_graphs_up_to_iso(n)?
            .into_iter()
            .filter(Graph::is_connected)
            .collect());
    }
    Ok(labeled_connected(n).collect())
}

/// Lazily walks all `2^C(n,2)` labeled graphs, keeping the connected ones.
pub fn labeled_connected(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0..1u64 << pairs.len()).filter_map(move |mask| {
        let mut adj = vec![0u64; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
        }
        let g = Graph::from_adjacency(adj).expect("valid");
        g.is_connected().then_some(g)
    })
}

/// Connected graphs on `n_min..=n_max` vertices, deduplicated or labeled.
pub fn sweep_graphs(n_min: usize, n_max: usize, dedup: bool) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.extend(enumerate_connected(n, dedup)?);
    }
    Ok(out)
}

/// Reads one graph per non-empty line.
pub fn read_graph6(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(Graph::parse_graph6)
        .collect()
}

/// Runs `f` on a pool with `jobs` workers (all cores when `None`).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub graph6: String,
    pub k: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct TheoremReport {
    pub n_range: (usize, usize),
    pub k_range: (usize, usize),
    pub graphs_checked: usize,
    pub hypothesis_instances: usize,
    pub trees_found: usize,
    pub exceptional_found: usize,
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    fn merge(mut self, other: TheoremReport) -> TheoremReport {
        self.n_range = merge_range(self.n_range, other.n_range);
        self.k_range = merge_range(self.k_range, other.k_range);
        self.graphs_checked += other.graphs_checked;
        self.hypothesis_instances += other.hypothesis_instances;
        self.trees_found += other.trees_found;
        self.exceptional_found += other.exceptional_found;
        self.violations.extend(other.violations);
        self
    }

    /// Totals add up and nothing was flagged.
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
            && self.trees_found + self.exceptional_found == self.hypothesis_instances
    }
}

fn merge_range(a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    if a.0 > a.1 {
        return b;
    }
    if b.0 > b.1 {
        return a;
    }
    (a.0.min(b.0), a.1.max(b.1))
}

const EMPTY_RANGE: (usize, usize) = (usize::MAX, 0);

/// Main theorem: for every `k ∈ [2, n]` with `σ₂ ≥ n - k`, the exact solver
/// returns a validated tree with at most `k` leaves (and at most `k - 2`
/// branch vertices) or an H-certificate carrying the same `k`, the oracle
/// agrees, and improving mode lands in the same outcome class.
pub fn verify_theorem_main(graphs: &[Graph], cfg: OracleConfig) -> TheoremReport {
    let mut report = graphs.par_iter().map(|g| check_main(g, cfg)).reduce(
        || TheoremReport {
            n_range: EMPTY_RANGE,
            k_range: EMPTY_RANGE,
            ..Default::default()
        },
        TheoremReport::merge,
    );
    report.violations.sort();
    report
}

fn check_main(g: &Graph, cfg: OracleConfig) -> TheoremReport {
    let n = g.n();
    let mut r = TheoremReport {
        n_range: (n, n),
        k_range: if n >= 2 { (2, n) } else { EMPTY_RANGE },
        graphs_checked: 1,
        ..Default::default()
    };
    let flag = |k: usize, detail: String| Violation {
        graph6: g.to_graph6(),
        k,
        detail,
    };
    if !g.is_connected() {
        r.violations
            .push(flag(0, "input graph is disconnected".into()));
        return r;
    }
    let sigma2 = g.sigma2();
    let recognized = recognize_h(g);
    for k in 2..=n {
        if !sigma2.at_least(n as isize - k as isize) {
            continue;
        }
        r.hypothesis_instances += 1;
        let oracle = match mlst::has_k_ended_tree_with(g, k, cfg) {
            Ok(o) => o,
            Err(e) => {
                r.violations.push(flag(k, format!("oracle failed: {e}")));
                continue;
            }
        };
        let exact = match solve(g, k, Mode::Exact) {
            Ok(s) => s.outcome,
            Err(e) => {
                r.violations
                    .push(flag(k, format!("exact solve failed: {e}")));
                continue;
            }
        };
        let mut problems = Vec::new();
        match &exact {
            SolveOutcome::Tree(t) => {
                if let Err(e) = t.validate(g) {
                    problems.push(format!("invalid tree: {e}"));
                }
                if t.leaf_count() > k {
                    problems.push(format!("tree has {} leaves", t.leaf_count()));
                }
                if t.branch_vertices().len() > k.saturating_sub(2) {
                    problems.push(format!(
                        "tree has {} branch vertices",
                        t.branch_vertices().len()
                    ));
                }
                if oracle.is_none() {
                    problems.push("oracle finds no k-ended tree".into());
                }
            }
            SolveOutcome::Exceptional(c) => {
                if c.k != k || n != 2 * c.m + k {
                    problems.push(format!("certificate (m={}, k={}) mismatches k", c.m, c.k));
                }
                if let Err(e) = c.validate(g) {
                    problems.push(e.to_string());
                }
                if recognized.as_ref() != Some(c) {
                    problems.push("recognizer disagrees with certificate".into());
                }
                if oracle.is_some() {
                    problems.push("oracle finds a k-ended tree for a certified H".into());
                }
            }
        }
        // the statement itself, independent of the solver
        let exception = recognized.as_ref().is_some_and(|c| c.k == k);
        if oracle.is_none() && !exception {
            problems.push("no k-ended tree and not H(m, k, S)".into());
        }
        match solve(g, k, Mode::Improving) {
            Ok(s) if s.outcome.is_tree() == exact.is_tree() => {}
            Ok(_) => problems.push("improving mode reached a different outcome class".into()),
            Err(e) => problems.push(format!("improving solve failed: {e}")),
        }
        if problems.is_empty() {
            if exact.is_tree() {
                r.trees_found += 1;
            } else {
                r.exceptional_found += 1;
            }
        } else {
            r.violations.push(flag(k, problems.join("; ")));
        }
    }
    r
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct BaselineReport {
    pub n_range: (usize, usize),
    pub graphs_checked: usize,
    /// Graphs with `σ₂ ≥ n - 1`.
    pub ore_instances: usize,
    /// Pairs `(G, k)` with `σ₂ ≥ n - k + 1`.
    pub degree_sum_instances: usize,
    pub violations: Vec<Violation>,
}

impl BaselineReport {
    fn merge(mut self, o: BaselineReport) -> BaselineReport {
        self.n_range = merge_range(self.n_range, o.n_range);
        self.graphs_checked += o.graphs_checked;
        self.ore_instances += o.ore_instances;
        self.degree_sum_instances += o.degree_sum_instances;
        self.violations.extend(o.violations);
        self
    }
}

/// `σ₂ ≥ n - 1` forces a Hamiltonian path; `σ₂ ≥ n - k + 1` forces a
/// spanning tree with at most `k` leaves. Checked against the oracle.
pub fn verify_baselines(graphs: &[Graph], cfg: OracleConfig) -> BaselineReport {
    let mut report = graphs
        .par_iter()
        .map(|g| {
            let n = g.n();
            let mut r = BaselineReport {
                n_range: (n, n),
                graphs_checked: 1,
                ..Default::default()
            };
            let min = match mlst::min_leaf_tree(g, cfg) {
                Ok(t) => t.leaves,
                Err(e) => {
                    r.violations.push(Violation {
                        graph6: g.to_graph6(),
                        k: 0,
                        detail: format!("oracle failed: {e}"),
                    });
                    return r;
                }
            };
            let s = g.sigma2();
            if s.at_least(n as isize - 1) {
                r.ore_instances += 1;
                if min > 2 {
                    r.violations.push(Violation {
                        graph6: g.to_graph6(),
                        k: 2,
                        detail: format!("σ₂ ≥ n - 1 but minimum leaf count is {min}"),
                    });
                }
            }
            for k in 2..=n.max(2) {
                if s.at_least(n as isize - k as isize + 1) {
                    r.degree_sum_instances += 1;
                    if min > k {
                        r.violations.push(Violation {
                            graph6: g.to_graph6(),
                            k,
                            detail: format!("σ₂ ≥ n - k + 1 but minimum leaf count is {min}"),
                        });
                    }
                }
            }
            r
        })
        .reduce(
            || BaselineReport {
                n_range: EMPTY_RANGE,
                ..Default::default()
            },
            BaselineReport::merge,
        );
    report.violations.sort();
    report
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SharpnessInstance {
    pub m: usize,
    pub k: usize,
    pub extra_edges: Vec<(usize, usize)>,
    pub graph6: String,
    pub lemma: LemmaReport,
    /// Spanning trees visited while checking the edge-count inequality.
    pub trees_enumerated: Option<u64>,
    pub recognized: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SharpnessReport {
    pub m_max: usize,
    pub k_max: usize,
    pub instances_checked: usize,
    pub trees_enumerated: u64,
    pub instances: Vec<SharpnessInstance>,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Copy, Debug)]
pub struct SharpnessConfig {
    pub oracle: OracleConfig,
    /// Enumerate every spanning tree when `2m + k` is at most this.
    pub enumerate_up_to: usize,
    /// Every extra-edge subset is tried for `m` up to this value; above it a
    /// sample is drawn.
    pub all_subsets_up_to_m: usize,
    pub random_subsets: usize,
    pub seed: u64,
}

impl Default for SharpnessConfig {
    fn default() -> Self {
        SharpnessConfig {
            oracle: OracleConfig::default(),
            enumerate_up_to: 11,
            all_subsets_up_to_m: 3,
            random_subsets: 50,
            seed: 0,
        }
    }
}

/// Extra-edge sets to try for a given `m`.
pub fn extra_edge_sets(m: usize, cfg: &SharpnessConfig) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .collect();
    let subset = |mask: u64| -> Vec<(usize, usize)> {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    };
    if m <= cfg.all_subsets_up_to_m {
        return (0..1u64 << pairs.len()).map(subset).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (m as u64) << 32);
    (0..cfg.random_subsets)
        .map(|_| {
            let mut p = pairs.clone();
            p.shuffle(&mut rng);
            let take = rand::Rng::gen_range(&mut rng, 0..=p.len());
            let mut s = p[..take].to_vec();
            s.sort();
            s
        })
        .collect()
}

/// Every spanning tree `T` of `H(m, k, S)` satisfies
/// `n - 1 ≥ Σ_{b∈B} deg_T(b) ≥ |L(T) ∩ B| + 2 |B \ L(T)|`, so at least
/// `k + 1` leaves lie in `B`. Returns the number of trees checked.
pub fn check_counting_inequality(p: &HParams, g: &Graph) -> Result<u64> {
    let n = g.n();
    let b_mask = full_mask(n) & !full_mask(p.m);
    let mut failure = None;
    let count = mlst::for_each_spanning_tree(g, |t| {
        let mut deg_sum = 0usize;
        let mut leaves_in_b = 0usize;
        for b in Bits(b_mask) {
            let d = t.degree[b] as usize;
            deg_sum += d;
            if d == 1 {
                leaves_in_b += 1;
            }
        }
        let b_size = p.m + p.k;
        let lower = leaves_in_b + 2 * (b_size - leaves_in_b);
        if !(n > deg_sum && deg_sum >= lower && leaves_in_b > p.k) {
            failure = Some(format!(
                "tree {:?}: Σ deg_B = {deg_sum}, |L∩B| = {leaves_in_b}",
                t.edges
            ));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    match failure {
        Some(f) => Err(Error::Contradiction {
            step: "counting-inequality".into(),
            detail: f,
        }),
        None => Ok(count),
    }
}

/// Sweeps `H(m, k, S)` for `1 ≤ m ≤ m_max`, `2 ≤ k ≤ k_max`.
pub fn verify_sharpness(m_max: usize, k_max: usize, cfg: SharpnessConfig) -> SharpnessReport {
    let mut work = Vec::new();
    for m in 1..=m_max {
        let sets = extra_edge_sets(m, &cfg);
        for k in 2..=k_max {
            for s in &sets {
                work.push((m, k, s.clone()));
            }
        }
    }
    let results: Vec<(SharpnessInstance, Vec<Violation>)> = work
        .into_par_iter()
        .map(|(m, k, s)| sharpness_instance(m, k, s, &cfg))
        .collect();
    let mut violations = Vec::new();
    let mut instances = Vec::with_capacity(results.len());
    for (inst, v) in results {
        violations.extend(v);
        instances.push(inst);
    }
    violations.sort();
    SharpnessReport {
        m_max,
        k_max,
        instances_checked: instances.len(),
        trees_enumerated: instances.iter().filter_map(|i| i.trees_enumerated).sum(),
        instances,
        violations,
    }
}

fn sharpness_instance(
    m: usize,
    k: usize,
    s: Vec<(usize, usize)>,
    cfg: &SharpnessConfig,
) -> (SharpnessInstance, Vec<Violation>) {
    let p = HParams::new(m, k, s.clone()).expect("sweep parameters are valid");
    let g = construct_h(&p).expect("valid parameters");
    let graph6 = g.to_graph6();
    let mut violations = Vec::new();
    let mut flag = |detail: String| {
        violations.push(Violation {
            graph6: graph6.clone(),
            k,
            detail,
        })
    };
    let lemma = match lemma_check(&p, cfg.oracle) {
        Ok(l) => l,
        Err(e) => {
            flag(format!("lemma check failed: {e}"));
            return (
                SharpnessInstance {
                    m,
                    k,
                    extra_edges: s,
                    graph6: graph6.clone(),
                    lemma: empty_lemma(&p),
                    trees_enumerated: None,
                    recognized: false,
                },
                violations,
            );
        }
    };
    if !lemma.holds {
        flag(format!(
            "σ₂ = {}, minimum leaves {:?}, bounds [{}, {}]",
            lemma.sigma2, lemma.min_leaves, lemma.counting_lower_bound, lemma.upper_bound_leaves
        ));
    }
    let trees_enumerated = if g.n() <= cfg.enumerate_up_to {
        match check_counting_inequality(&p, &g) {
            Ok(c) => Some(c),
            Err(e) => {
                flag(e.to_string());
                None
            }
        }
    } else {
        None
    };
    let recognized = recognize_h(&g).is_some_and(|c| c.m == m && c.k == k);
    if !recognized {
        flag("recognizer misses a constructed H".into());
    }
    (
        SharpnessInstance {
            m,
            k,
            extra_edges: s,
            graph6,
            lemma,
            trees_enumerated,
            recognized,
        },
        violations,
    )
}

fn empty_lemma(p: &HParams) -> LemmaReport {
    LemmaReport {
        m: p.m,
        k: p.k,
        n: p.n(),
        sigma2: crate::graph::Sigma2::Infinite,
        sigma2_holds: false,
        counting_lower_bound: 0,
        min_leaves: None,
        upper_bound_witness: crate::tree::TreeJson {
            root: 0,
            parent: Vec::new(),
            leaves: Vec::new(),
        },
        upper_bound_leaves: 0,
        holds: false,
    }
}

/// `perm[v]` is the new label of `v`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Vertex set of `x` after relabeling with `perm`.
pub fn relabel_set(x: VertexSet, perm: &[usize]) -> VertexSet {
    x.iter().map(|v| perm[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_code_is_relabel_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for g in [
            Graph::petersen(),
            Graph::complete_bipartite(2, 4).unwrap(),
            Graph::path(7).unwrap(),
            Graph::cycle(6).unwrap(),
        ] {
            let c = canonical_code(&g).unwrap();
            for _ in 0..10 {
                let perm = random_permutation(g.n(), &mut rng);
                assert_eq!(canonical_code(&g.relabel(&perm).unwrap()).unwrap(), c);
            }
        }
        assert_ne!(
            canonical_code(&Graph::path(6).unwrap()).unwrap(),
            canonical_code(&Graph::cycle(6).unwrap()).unwrap()
        );
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_connected(1, true).unwrap().len(), 1);
        assert_eq!(enumerate_connected(4, true).unwrap().len(), 6);
        assert_eq!(enumerate_connected(3, false).unwrap().len(), 4);
        assert_eq!(enumerate_connected(1, false).unwrap().len(), 1);
        assert!(enumerate_connected(9, true).is_err());
    }

    #[test]
    fn labeled_counts_match_known_values() {
        // connected labeled graphs: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5).map(|n| labeled_connected(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn k24_counted_as_exceptional_then_tree() {
        let g = Graph::complete_bipartite(2, 4).unwrap();
        let r = verify_theorem_main(&[g], OracleConfig::default());
        assert!(r.is_clean(), "{r:?}");
        // σ₂ = 4 = n - 2, so k = 2..=6 all satisfy the hypothesis
        assert_eq!(r.hypothesis_instances, 5);
        assert_eq!(r.exceptional_found, 1);
        assert_eq!(r.trees_found, 4);
    }

    #[test]
    fn small_main_sweep() {
        let graphs = sweep_graphs(1, 5, true).unwrap();
        let r = verify_theorem_main(&graphs, OracleConfig::default());
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.graphs_checked, 1 + 1 + 2 + 6 + 21);
    }

    #[test]
    fn sharpness_examples() {
        let cfg = SharpnessConfig::default();
        let r = verify_sharpness(2, 4, cfg);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        let full = r
            .instances
            .iter()
            .find(|i| i.m == 2 && i.k == 4 && i.extra_edges == vec![(0, 1)])
            .unwrap();
        assert_eq!(full.lemma.sigma2, crate::graph::Sigma2::Finite(4));
        let star = r.instances.iter().find(|i| i.m == 1 && i.k == 2).unwrap();
        assert_eq!(
            star.graph6,
            Graph::complete_bipartite(1, 3).unwrap().to_graph6()
        );
        assert_eq!(star.lemma.min_leaves, Some(3));
    }

    #[test]
    fn baselines_small() {
        let graphs = sweep_graphs(1, 6, true).unwrap();
        let r = verify_baselines(&graphs, OracleConfig::default());
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.ore_instances > 0);
    }

    #[test]
    fn graph6_ingestion() {
        let text = format!("{}\n\n{}\n", Graph::cycle(5).unwrap().to_graph6(), "C~");
        let gs = read_graph6(&text).unwrap();
        assert_eq!(gs.len(), 2);
        assert!(read_graph6("C~\n!!\n").is_err());
    }
}
