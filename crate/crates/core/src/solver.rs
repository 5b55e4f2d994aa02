//! Constructive solver for spanning k-ended trees under `σ₂(G) ≥ n - k`.
//!
//! Starting from a longest path `P = u ... v`, the solver either finds a
//! spanning tree with at most `k` leaves or pins the graph down as
//! `H(m, k, S)` and returns the bipartition. In [`Mode::Exact`] the path is a
//! true longest path, so every path-lengthening situation is reported as an
//! internal contradiction. In [`Mode::Improving`] the path comes from the
//! heuristic and each such situation is resolved by the matching path
//! exchange, restarting from the longer path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hfamily::{recognize_h, HCertificate};
use crate::longest_path::{longest_path_exact, longest_path_heuristic};
use crate::tree::{
    caterpillar_from_path, extend_from_cycle, extend_path_bridge, extend_path_offpath,
    rotate_cycle_crossing, spanning_cycle_of_path, surgery_leaf_merge, tree_around_path, Path,
    SpanningTree, TreeJson,
};

/// Seed for the heuristic starting path in improving mode.
pub const IMPROVING_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Improving,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Tree(SpanningTree),
    Exceptional(HCertificate),
}

impl SolveOutcome {
    pub fn is_tree(&self) -> bool {
        matches!(self, SolveOutcome::Tree(_))
    }

    pub fn to_json(&self) -> OutcomeJson {
        match self {
            SolveOutcome::Tree(t) => OutcomeJson::Tree(t.to_json()),
            SolveOutcome::Exceptional(c) => OutcomeJson::Exceptional {
                certificate: c.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OutcomeJson {
    Tree(TreeJson),
    Exceptional { certificate: HCertificate },
}

/// Which proof step a trace event instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step {
    InitialPath,
    Hamiltonian,
    /// `N(u) ∪ N(v) ⊆ V(P)`
    EndpointsClosed,
    /// no cycle through exactly `V(P)`
    NoSpanningCycle,
    /// `n - |P| ≤ k - 1`
    PathLengthBound,
    /// `n - |P| ≤ k - 2`, or an off-path vertex at distance two
    SlackTree,
    /// `n = |P| + k - 1`
    Tight,
    /// `{v} ∪ N(u)⁻ ∪ N(v) = V(P)`
    Cover,
    /// `u` and the off-path vertices are pairwise non-adjacent
    OffPathIndependent,
    /// every off-path vertex has `N(x) = N(v)`
    OffPathTwins,
    /// no two vertices of `N(v)` are consecutive on `P`
    NoConsecutive,
    /// `2m = |P| - 1`
    PathParity,
    /// `N(u) = N(v)` = the odd positions of `P`
    Alternation,
    PredecessorsIndependent,
    /// every `y ∈ N(u)⁻` has `N(y) = N(v)`
    PredecessorTwins,
    Bipartition,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: Step,
    pub path_len: usize,
    /// Present whenever the event changes or introduces the working path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SolverTrace {
    pub events: Vec<TraceEvent>,
}

impl SolverTrace {
    fn note(&mut self, step: Step, p: &Path, detail: impl Into<String>) {
        self.events.push(TraceEvent {
            step,
            path_len: p.len(),
            path: None,
            detail: detail.into(),
        });
    }

    fn path(&mut self, step: Step, p: &Path, detail: impl Into<String>) {
        self.events.push(TraceEvent {
            step,
            path_len: p.len(),
            path: Some(p.vertices().to_vec()),
            detail: detail.into(),
        });
    }

    /// Number of path-lengthening exchanges applied.
    pub fn restarts(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.path.is_some() && e.step != Step::InitialPath)
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub outcome: SolveOutcome,
    pub trace: SolverTrace,
}

fn contradiction(step: &str, detail: impl Into<String>) -> Error {
    Error::Contradiction {
        step: step.into(),
        detail: detail.into(),
    }
}

/// Checks the shared preconditions: connected, `k ≥ 2`, `σ₂ ≥ n - k`.
fn check_hypothesis(g: &Graph, k: usize) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let threshold = g.n() as isize - k as isize;
    let s = g.sigma2();
    if !s.at_least(threshold) {
        return Err(Error::Hypothesis {
            sigma2: s.finite().unwrap_or(0),
            threshold: threshold.max(0) as usize,
        });
    }
    Ok(())
}

pub fn solve(g: &Graph, k: usize, mode: Mode) -> Result<Solved> {
    check_hypothesis(g, k)?;
    let mut trace = SolverTrace::default();
    let mut p = match mode {
        Mode::Exact => longest_path_exact(g)?,
        Mode::Improving => longest_path_heuristic(g, IMPROVING_SEED),
    };
    trace.path(Step::InitialPath, &p, format!("{mode:?} start"));
    loop {
        match analyze(g, k, mode, &p, &mut trace)? {
            Next::Done(outcome) => {
                if let SolveOutcome::Tree(t) = &outcome {
                    t.validate(g)?;
                    debug_assert!(t.leaf_count() <= k);
                }
                return Ok(Solved { outcome, trace });
            }
            Next::Longer(q) => {
                debug_assert!(q.len() > p.len());
                p = q;
            }
        }
    }
}

/// Smallest `k ≥ 2` with `σ₂ ≥ n - k`, and the exact-mode outcome there.
pub fn solve_min_k(g: &Graph) -> Result<(usize, Solved)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = match g.sigma2().finite() {
        None => 2,
        Some(s) => g.n().saturating_sub(s).max(2),
    };
    Ok((k, solve(g, k, Mode::Exact)?))
}

enum Next {
    Done(SolveOutcome),
    Longer(Path),
}

fn analyze(g: &Graph, k: usize, mode: Mode, p: &Path, trace: &mut SolverTrace) -> Result<Next> {
    let n = g.n();
    if p.len() == n {
        trace.note(Step::Hamiltonian, p, "path spans G");
        return Ok(Next::Done(SolveOutcome::Tree(SpanningTree::from_path(
            g, p,
        )?)));
    }
    let on = p.vertex_set();
    let (u, v) = (p.first(), p.last());

    // Endpoint neighborhoods stay on the path.
    for end in [u, v] {
        if let Some(w) = g.neighbors(end).difference(on).iter().next() {
            return match mode {
                Mode::Exact => Err(contradiction(
                    "endpoints-closed",
                    format!("{end} has off-path neighbor {w}"),
                )),
                Mode::Improving => {
                    let mut verts = p.vertices().to_vec();
                    if end == u {
                        verts.insert(0, w);
                    } else {
                        verts.push(w);
                    }
                    let q = Path::new(g, verts)?;
                    trace.path(Step::EndpointsClosed, &q, format!("appended {w} at {end}"));
                    Ok(Next::Longer(q))
                }
            };
        }
    }

    // No cycle on V(P), so uv ∉ E and N(u)⁻ ∩ N(v) = ∅.
    if let Some(cycle) = spanning_cycle_of_path(g, p) {
        return match mode {
            Mode::Exact => Err(contradiction("no-spanning-cycle", "cycle through V(P)")),
            Mode::Improving => {
                let q = extend_from_cycle(g, p, &cycle)?;
                trace.path(
                    Step::NoSpanningCycle,
                    &q,
                    "opened a cycle on V(P) at an off-path vertex",
                );
                Ok(Next::Longer(q))
            }
        };
    }
    let pred_u = p.predecessors_of(g, u);
    let nv = g.neighbors(v);
    trace.note(
        Step::EndpointsClosed,
        p,
        "N(u) ∪ N(v) ⊆ V(P), uv ∉ E, N(u)⁻ ∩ N(v) = ∅",
    );

    // deg u + deg v = |N(u)⁻| + |N(v)| ≤ |P| - 1, against σ₂ ≥ n - k
    let off = n - p.len();
    if off > k - 1 {
        return Err(contradiction(
            "path-length-bound",
            format!("n - |P| = {off} exceeds k - 1 = {}", k - 1),
        ));
    }
    trace.note(Step::PathLengthBound, p, format!("n - |P| = {off} ≤ k - 1"));

    if off <= k - 2 {
        let t = tree_around_path(g, p)?;
        trace.note(
            Step::SlackTree,
            p,
            format!(
                "n - |P| ≤ k - 2: breadth-first tree with {} leaves",
                t.leaf_count()
            ),
        );
        return leaf_checked(t, k, "slack-tree");
    }
    trace.note(
        Step::Tight,
        p,
        format!("n = |P| + k - 1 = {}", p.len() + k - 1),
    );

    let cat = match caterpillar_from_path(g, p) {
        Ok(c) => c,
        Err(remote) => {
            // a distance-two vertex makes its parent internal: at most k leaves
            let t = tree_around_path(g, p)?;
            trace.note(
                Step::SlackTree,
                p,
                format!(
                    "vertices {:?} at distance ≥ 2: tree with {} leaves",
                    remote.0,
                    t.leaf_count()
                ),
            );
            return leaf_checked(t, k, "slack-tree");
        }
    };
    let cat_tree = cat.to_tree(g)?;
    if cat_tree.leaf_count() != k + 1 {
        return Err(contradiction(
            "tight",
            format!(
                "caterpillar has {} leaves, expected k + 1",
                cat_tree.leaf_count()
            ),
        ));
    }
    if pred_u.union(nv).len() + 1 != p.len() || pred_u.union(nv).contains(v) {
        return Err(contradiction("cover", "{v} ∪ N(u)⁻ ∪ N(v) ≠ V(P)"));
    }
    trace.note(Step::Cover, p, "{v} ∪ N(u)⁻ ∪ N(v) = V(P)");

    // x_1..x_{k-1} are the off-path vertices; x_k = v.
    let xs: Vec<usize> = g.vertices().difference(on).to_vec();
    for (i, &xi) in xs.iter().enumerate() {
        for &xj in &xs[i + 1..] {
            if g.has_edge(xi, xj) {
                let t = surgery_leaf_merge(g, &cat, xi, xj)?;
                trace.note(
                    Step::OffPathIndependent,
                    p,
                    format!("leaves {xi},{xj} adjacent: rehung {xj} on {xi}"),
                );
                return leaf_checked(t, k, "off-path-independent");
            }
        }
    }
    trace.note(
        Step::OffPathIndependent,
        p,
        "{u, x_1, ..., x_k} is independent",
    );

    for &x in &xs {
        let bad = g.neighbors(x).intersection(pred_u);
        if let Some(y) = bad.iter().next() {
            return match mode {
                Mode::Exact => Err(contradiction(
                    "off-path-twins",
                    format!("{y} ∈ N({x}) ∩ N(u)⁻"),
                )),
                Mode::Improving => {
                    let q = extend_path_offpath(g, p, x, y)?;
                    trace.path(
                        Step::OffPathTwins,
                        &q,
                        format!("P + {x}{y} + u{y}⁺ - {y}{y}⁺"),
                    );
                    Ok(Next::Longer(q))
                }
            };
        }
        if g.neighbors(x) != nv {
            return Err(contradiction("off-path-twins", format!("N({x}) ≠ N(v)")));
        }
    }
    trace.note(
        Step::OffPathTwins,
        p,
        "N(x_i) = N(v) for every off-path x_i",
    );

    let x1 = xs[0];
    let zs = p.vertices();
    if let Some(w) = zs
        .windows(2)
        .find(|w| nv.contains(w[0]) && nv.contains(w[1]))
    {
        let (y, z) = (w[0], w[1]);
        return match mode {
            Mode::Exact => Err(contradiction(
                "no-consecutive",
                format!("{y}{z} ∈ E(P) with both in N(v)"),
            )),
            Mode::Improving => {
                let q = extend_path_bridge(g, p, x1, y, z)?;
                trace.path(
                    Step::NoConsecutive,
                    &q,
                    format!("P + {y}{x1} + {z}{x1} - {y}{z}"),
                );
                Ok(Next::Longer(q))
            }
        };
    }
    trace.note(
        Step::NoConsecutive,
        p,
        "no two vertices of N(v) are consecutive on P",
    );

    let m = nv.len();
    if 2 * m + 1 != p.len() {
        return Err(contradiction(
            "path-parity",
            format!("2m = {} but |P| - 1 = {}", 2 * m, p.len() - 1),
        ));
    }
    trace.note(Step::PathParity, p, format!("m = {m}, 2m = |P| - 1"));

    let odd: VertexSet = zs.iter().skip(1).step_by(2).copied().collect();
    let even: VertexSet = zs[..zs.len() - 1].iter().step_by(2).copied().collect();
    if nv != odd || pred_u != even || g.neighbors(u) != odd {
        return Err(contradiction(
            "alternation",
            "neighborhoods of u and v are not the odd positions",
        ));
    }
    trace.note(
        Step::Alternation,
        p,
        "N(u) = N(v) = {z_1, z_3, ..., z_{2m-1}}",
    );

    for i in 1..m {
        for j in i + 1..m {
            if g.has_edge(zs[2 * i], zs[2 * j]) {
                return match mode {
                    Mode::Exact => Err(contradiction(
                        "predecessors-independent",
                        format!("z_{} z_{} ∈ E", 2 * i, 2 * j),
                    )),
                    Mode::Improving => {
                        let q = rotate_cycle_crossing(g, p, i, j)?;
                        trace.path(
                            Step::PredecessorsIndependent,
                            &q,
                            format!("crossing cycle at z_{} z_{}", 2 * i, 2 * j),
                        );
                        Ok(Next::Longer(q))
                    }
                };
            }
        }
    }
    trace.note(Step::PredecessorsIndependent, p, "N(u)⁻ is independent");

    if let Some(y) = even.iter().find(|&y| g.neighbors(y) != nv) {
        return Err(contradiction("predecessor-twins", format!("N({y}) ≠ N(v)")));
    }
    trace.note(Step::PredecessorTwins, p, "N(y) = N(v) for every y ∈ N(u)⁻");

    let b = even
        .union(xs.iter().copied().collect())
        .union([v].into_iter().collect());
    let cert = HCertificate { m, k, a: nv, b };
    cert.validate(g)
        .map_err(|e| contradiction("bipartition", e.to_string()))?;
    match recognize_h(g) {
        Some(r) if r == cert => {}
        other => {
            return Err(contradiction(
                "bipartition",
                format!("recognizer disagrees: {other:?}"),
            ))
        }
    }
    trace.note(Step::Bipartition, p, format!("G ≅ H({m}, {k}, S)"));
    Ok(Next::Done(SolveOutcome::Exceptional(cert)))
}

fn leaf_checked(t: SpanningTree, k: usize, step: &str) -> Result<Next> {
    if t.leaf_count() > k {
        return Err(contradiction(
            step,
            format!("tree has {} > k leaves", t.leaf_count()),
        ));
    }
    Ok(Next::Done(SolveOutcome::Tree(t)))
}
