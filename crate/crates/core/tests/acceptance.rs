//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kended::harness::{self, SharpnessConfig};
use kended::hfamily::{construct_h, recognize_h, HParams};
use kended::longest_path::longest_path_exact;
use kended::mlst::{self, OracleConfig};
use kended::solver::{solve, Mode, SolveOutcome};
use kended::Graph;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    let mut summary = summary;
    if let Some(first) = failures.first() {
        summary.push_str(&format!("; {} failure(s), first: {first}", failures.len()));
    }
    Outcome {
        ok: failures.is_empty(),
        summary,
    }
}

fn connected_up_to(n_max: usize) -> Vec<Graph> {
    harness::sweep_graphs(1, n_max, true).expect("enumeration")
}

/// Checks one solver result against the independent oracles; returns the
/// number of branch vertices of the tree, if one was returned.
fn check_solved(
    g: &Graph,
    k: usize,
    min_leaves: usize,
    failures: &mut Vec<String>,
) -> Option<usize> {
    let g6 = g.to_graph6();
    let solved = match solve(g, k, Mode::Exact) {
        Ok(s) => s,
        Err(e) => {
            failures.push(format!("{g6} k={k}: solve failed: {e}"));
            return None;
        }
    };
    match solved.outcome {
        SolveOutcome::Tree(t) => match common::check_spanning_tree(g, &t.edges()) {
            Ok(deg) => {
                let leaves = common::leaves(&deg);
                if leaves > k {
                    failures.push(format!("{g6} k={k}: tree has {leaves} leaves"));
                }
                if min_leaves > k {
                    failures.push(format!(
                        "{g6} k={k}: tree returned but oracle minimum is {min_leaves}"
                    ));
                }
                Some(common::branch_vertices(&deg))
            }
            Err(e) => {
                failures.push(format!("{g6} k={k}: invalid tree: {e}"));
                None
            }
        },
        SolveOutcome::Exceptional(c) => {
            let (a, b) = (c.a.to_vec(), c.b.to_vec());
            if c.k != k || !common::is_h_with_parts(g, &a, &b, c.m, c.k) {
                failures.push(format!("{g6} k={k}: bad certificate {c:?}"));
            }
            if min_leaves != k + 1 {
                failures.push(format!(
                    "{g6} k={k}: exceptional but oracle minimum is {min_leaves}"
                ));
            }
            None
        }
    }
}

fn main_sweep(graphs: &[Graph], failures: &mut Vec<String>) -> (usize, usize, usize) {
    let (mut instances, mut trees, mut exceptional) = (0, 0, 0);
    for g in graphs {
        let n = g.n();
        if n < 2 {
            continue;
        }
        let min_leaves = match mlst::min_leaf_count(g) {
            Ok(l) => l,
            Err(e) => {
                failures.push(format!("{}: oracle failed: {e}", g.to_graph6()));
                continue;
            }
        };
        for k in 2..=n {
            if !common::hypothesis_holds(g, k) {
                continue;
            }
            instances += 1;
            if check_solved(g, k, min_leaves, failures).is_some() {
                trees += 1;
            } else {
                exceptional += 1;
            }
        }
    }
    (instances, trees, exceptional)
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    let small = connected_up_to(7);
    let (i7, _, _) = main_sweep(&small, &mut failures);
    let t7 = start.elapsed();

    let graphs = connected_up_to(8);
    for n in 1..=8 {
        let got = graphs.iter().filter(|g| g.n() == n).count();
        if got != common::CONNECTED_UNLABELED[n - 1] {
            failures.push(format!("n={n}: enumerated {got} classes"));
        }
    }
    let eight: Vec<Graph> = graphs.iter().filter(|g| g.n() == 8).cloned().collect();
    let (i8, _, _) = main_sweep(&eight, &mut failures);
    let report = harness::verify_theorem_main(&graphs, OracleConfig::default());
    for v in &report.violations {
        failures.push(format!("harness: {} k={} {}", v.graph6, v.k, v.detail));
    }
    if report.hypothesis_instances != i7 + i8 {
        failures.push(format!(
            "harness counted {} instances, independent count {}",
            report.hypothesis_instances,
            i7 + i8
        ));
    }
    let total = start.elapsed();
    if t7 > Duration::from_secs(30) {
        failures.push(format!("n<=7 sub-sweep took {t7:.1?}"));
    }
    if total > Duration::from_secs(600) {
        failures.push(format!("sweep took {total:.1?}"));
    }
    outcome(
        &failures,
        format!(
            "main theorem, n<=8 deduped: {} graphs, {} instances ({} trees, {} exceptional), n<=7 in {t7:.2?}, total {total:.2?}",
            graphs.len(),
            report.hypothesis_instances,
            report.trees_found,
            report.exceptional_found
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    let cfg = SharpnessConfig::default();
    let report = harness::verify_sharpness(4, 4, cfg);
    for v in &report.violations {
        failures.push(format!("harness: {} k={} {}", v.graph6, v.k, v.detail));
    }
    let mut enumerated = 0;
    for inst in &report.instances {
        let p = HParams::new(inst.m, inst.k, inst.extra_edges.clone()).unwrap();
        let g = construct_h(&p).unwrap();
        let n = g.n();
        let tag = format!("H({},{},{:?})", inst.m, inst.k, inst.extra_edges);
        if common::sigma2(&g) != Some(2 * inst.m) || 2 * inst.m != n - inst.k {
            failures.push(format!("{tag}: sigma2 = {:?}", common::sigma2(&g)));
        }
        match inst.lemma.min_leaves {
            Some(l) if l == inst.k + 1 => {}
            other => failures.push(format!("{tag}: min leaves {other:?}")),
        }
        if n <= cfg.enumerate_up_to {
            match inst.trees_enumerated {
                Some(_) => enumerated += 1,
                None => failures.push(format!("{tag}: counting inequality not enumerated")),
            }
        }
    }
    let expected_sets: usize = (1..=4usize)
        .map(|m| {
            let pairs = m * (m - 1) / 2;
            if m <= 3 {
                1 << pairs
            } else {
                cfg.random_subsets
            }
        })
        .sum::<usize>()
        * 3;
    if report.instances_checked != expected_sets {
        failures.push(format!(
            "{} instances checked, expected {expected_sets}",
            report.instances_checked
        ));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("took {elapsed:.1?}"));
    }
    outcome(
        &failures,
        format!(
            "exceptional family, m<=4, k<=4: {} instances, {} with every tree enumerated ({} trees), {elapsed:.2?}",
            report.instances_checked, enumerated, report.trees_enumerated
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let graphs = connected_up_to(8);
    let (mut ore, mut degree_sum) = (0, 0);
    for g in &graphs {
        let n = g.n();
        let g6 = g.to_graph6();
        if common::hypothesis_holds(g, 1) {
            ore += 1;
            if common::longest_path_len(g) != n {
                failures.push(format!("{g6}: Ore condition but no Hamiltonian path"));
            }
        }
        let min_leaves = mlst::min_leaf_count(g).unwrap();
        for k in 2..=n.max(2) {
            if common::hypothesis_holds(g, k - 1) {
                degree_sum += 1;
                if min_leaves > k {
                    failures.push(format!("{g6} k={k}: minimum {min_leaves} leaves"));
                }
            }
        }
    }
    let report = harness::verify_baselines(&graphs, OracleConfig::default());
    for v in &report.violations {
        failures.push(format!("harness: {} k={} {}", v.graph6, v.k, v.detail));
    }
    if (report.ore_instances, report.degree_sum_instances) != (ore, degree_sum) {
        failures.push(format!(
            "harness counted ({}, {}), independent ({ore}, {degree_sum})",
            report.ore_instances, report.degree_sum_instances
        ));
    }
    outcome(
        &failures,
        format!("baselines, n<=8 deduped: {ore} Ore instances, {degree_sum} degree-sum instances"),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for g in connected_up_to(8).iter().filter(|g| g.n() >= 2) {
        let min_leaves = mlst::min_leaf_count(g).unwrap();
        for k in 3..=g.n() {
            if !common::hypothesis_holds(g, k) {
                continue;
            }
            if let Some(branches) = check_solved(g, k, min_leaves, &mut failures) {
                checked += 1;
                if branches > k - 2 {
                    failures.push(format!(
                        "{} k={k}: {branches} branch vertices",
                        g.to_graph6()
                    ));
                }
            }
        }
    }
    let mut trees = 0u64;
    for n in 2..=8 {
        common::for_each_labeled_tree(n, |deg| {
            trees += 1;
            let (l, b) = (common::leaves(deg), common::branch_vertices(deg));
            if b + 2 > l.max(2) {
                failures.push(format!(
                    "tree on {n} vertices: {l} leaves, {b} branch vertices"
                ));
            }
        });
    }
    let expected: u64 = (2..=8u64).map(|n| n.pow(n as u32 - 2)).sum();
    if trees != expected {
        failures.push(format!(
            "enumerated {trees} labeled trees, expected {expected}"
        ));
    }
    outcome(
        &failures,
        format!("branch vertices: {checked} solver trees with k>=3, {trees} labeled trees on 2..=8 vertices"),
    )
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if common::is_connected(&g) {
            return g;
        }
    }
}

const TREE_LIMIT: u128 = 10_000_000;

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    let graphs = connected_up_to(8);
    let cross = |g: &Graph, failures: &mut Vec<String>| {
        let g6 = g.to_graph6();
        let bnb = mlst::min_leaf_tree(g, OracleConfig::default());
        let en = mlst::min_leaf_tree_enumerate(g, TREE_LIMIT);
        match (bnb, en) {
            (Ok(a), Ok(b)) => {
                if a.leaves != b.leaves {
                    failures.push(format!(
                        "{g6}: branch and bound {} vs enumeration {}",
                        a.leaves, b.leaves
                    ));
                }
                match common::check_spanning_tree(g, &a.tree.edges()) {
                    Ok(deg) if common::leaves(&deg) == a.leaves || g.n() == 1 => {}
                    other => failures.push(format!("{g6}: bad witness {other:?}")),
                }
            }
            (a, b) => failures.push(format!("{g6}: {:?} / {:?}", a.err(), b.err())),
        }
    };
    for g in &graphs {
        cross(g, &mut failures);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut random, mut rejected) = (0, 0);
    while random < 1000 {
        let n = rng.gen_range(9..=12);
        let p = rng.gen_range(0.15..0.5);
        let g = random_connected(&mut rng, n, p);
        if mlst::spanning_tree_count(&g) > TREE_LIMIT {
            rejected += 1;
            continue;
        }
        cross(&g, &mut failures);
        random += 1;
    }
    let mut paths = 0;
    for g in &graphs {
        let want = common::longest_path_len(g);
        match longest_path_exact(g) {
            Ok(p) if p.len() == want => paths += 1,
            other => failures.push(format!(
                "{}: longest path {:?}, want {want}",
                g.to_graph6(),
                other.map(|p| p.len())
            )),
        }
    }
    outcome(
        &failures,
        format!(
            "oracles: {} enumerated graphs and {random} random n in [9,12] (redrew {rejected} with >1e7 trees), {paths} longest paths, {:.2?}",
            graphs.len(),
            start.elapsed()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let graphs = connected_up_to(8);
    let (mut recognized, mut relabelings) = (0, 0);
    for g in &graphs {
        let g6 = g.to_graph6();
        let brute = common::h_bipartitions(g);
        let cert = recognize_h(g);
        match (&cert, brute.as_slice()) {
            (None, []) => continue,
            (Some(c), found) if found.contains(&(c.a.0, c.m, c.k)) => {}
            _ => {
                failures.push(format!("{g6}: recognizer {cert:?}, brute force {brute:?}"));
                continue;
            }
        }
        let c = cert.unwrap();
        recognized += 1;
        let n = g.n();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            let image: u64 = c.a.iter().map(|v| 1u64 << perm[v]).sum();
            match recognize_h(&h) {
                Some(d) if d.a.0 == image && (d.m, d.k) == (c.m, c.k) => relabelings += 1,
                other => failures.push(format!("{g6} relabeled by {perm:?}: {other:?}")),
            }
        }
    }
    outcome(
        &failures,
        format!(
            "recognizer: {} graphs, {recognized} in the family, {relabelings} relabelings",
            graphs.len()
        ),
    )
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kended"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice::<serde_json::Value>(&out.stdout)
        .map_err(|e| format!("{args:?}: output is not JSON: {e}"))?;
    Ok(out.stdout)
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    let mut cases: Vec<Vec<String>> = Vec::new();
    let samples = [
        Graph::petersen(),
        Graph::cycle(7).unwrap(),
        Graph::complete_bipartite(3, 5).unwrap(),
        construct_h(&HParams::new(2, 3, vec![(0, 1)]).unwrap()).unwrap(),
        Graph::path(6).unwrap(),
    ];
    for g in &samples {
        let k0 = common::sigma2(g).map_or(2, |s| g.n().saturating_sub(s).max(2));
        for k in [k0, k0 + 1] {
            let k = k.to_string();
            cases.push(
                [
                    "solve",
                    "--mode",
                    "exact",
                    "--k",
                    &k,
                    "--trace",
                    &g.to_graph6(),
                ]
                .map(String::from)
                .to_vec(),
            );
        }
    }
    for jobs in ["1", "2"] {
        cases.push(
            ["verify", "main", "--n-max", "6", "--dedup", "--jobs", jobs]
                .map(String::from)
                .to_vec(),
        );
    }
    cases.push(
        ["verify", "baselines", "--n-max", "6", "--dedup"]
            .map(String::from)
            .to_vec(),
    );
    cases.push(
        ["verify", "sharpness", "--m-max", "2", "--k-max", "3"]
            .map(String::from)
            .to_vec(),
    );
    for args in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_cli(&args);
        let second = run_cli(&args);
        runs += 2;
        match (first, second) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push(format!("{args:?}: outputs differ")),
            (Err(e), _) | (_, Err(e)) => failures.push(e),
        }
    }
    let j1 = run_cli(&["verify", "main", "--n-max", "6", "--dedup", "--jobs", "1"]);
    let j2 = run_cli(&["verify", "main", "--n-max", "6", "--dedup", "--jobs", "2"]);
    if let (Ok(a), Ok(b)) = (&j1, &j2) {
        if a != b {
            failures.push("verify output depends on --jobs".into());
        }
    }
    outcome(
        &failures,
        format!("determinism: {runs} CLI runs over {} commands", cases.len()),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut all_ok = true;
    for (id, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let r = run();
        all_ok &= r.ok;
        println!(
            "{} criterion {id}: {}",
            if r.ok { "PASS" } else { "FAIL" },
            r.summary
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
