use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use kended::harness::{self, SharpnessConfig};
use kended::hfamily::{construct_h, recognize_h, HParams};
use kended::longest_path::{longest_path_exact, longest_path_heuristic};
use kended::mlst::{self, OracleConfig, DEFAULT_ORACLE_CAP};
use kended::solver::{solve, Mode};
use kended::Graph;

#[derive(Parser)]
#[command(
    name = "kended",
    version,
    about = "Spanning k-ended trees under degree-sum conditions"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GraphInput {
    /// graph6 string, or `-` to read graph6 (or gen-h JSON) from stdin.
    graph: Option<String>,
    /// Read an edge list (`n m` then `u v` lines) from FILE.
    #[arg(long, value_name = "FILE", conflicts_with = "graph")]
    edges: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Exact,
    Improving,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Main,
    Sharpness,
    Baselines,
}

#[derive(Subcommand)]
enum Command {
    /// Basic parameters and H-family recognition.
    Analyze {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Spanning tree with at most k leaves, or an H certificate.
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: SolveMode,
        /// Include the step-by-step trace.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Minimum leaf count over all spanning trees, with a witness.
    Mlst {
        /// Use exhaustive spanning-tree enumeration instead of branch and bound.
        #[arg(long)]
        enumerate: bool,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Emit H(m, k, S) as graph6.
    GenH {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated A-pairs, e.g. "0-1,0-2".
        #[arg(long, conflicts_with = "extra_random")]
        extra_edges: Option<String>,
        /// Include each A-pair independently with this probability.
        #[arg(long)]
        extra_random: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification sweep; exits nonzero when violations exist.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// One graph per isomorphism class instead of all labeled graphs.
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Sweep the graphs in this graph6 file instead of enumerating.
        #[arg(long, value_name = "PATH")]
        graph6_file: Option<String>,
        /// Largest m for the sharpness sweep.
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        /// Largest k for the sharpness sweep.
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Longest path, exact or heuristic.
    LongestPath {
        #[arg(long, value_enum, default_value = "exact")]
        mode: PathMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        input: GraphInput,
    },
}

type CliResult<T> = Result<T, String>;

fn oracle_config() -> CliResult<OracleConfig> {
    let cap = match std::env::var("KENDED_ORACLE_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("KENDED_ORACLE_CAP must be an integer, got {v:?}"))?,
        Err(_) => DEFAULT_ORACLE_CAP,
    };
    Ok(OracleConfig { cap, budget: None })
}

fn read_graph(input: &GraphInput) -> CliResult<Graph> {
    if let Some(path) = &input.edges {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        return Graph::parse_edge_list(&text).map_err(|e| e.to_string());
    }
    let text = match input.graph.as_deref() {
        None => return Err("missing graph (graph6 string, `-`, or --edges FILE)".into()),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| e.to_string())?;
            s
        }
        Some(s) => s.to_string(),
    };
    let text = text.trim();
    if text.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let g6 = v["graph6"]
            .as_str()
            .ok_or("JSON input has no \"graph6\" field")?;
        return Graph::parse_graph6(g6).map_err(|e| e.to_string());
    }
    let line = text.lines().next().unwrap_or("");
    Graph::parse_graph6(line).map_err(|e| e.to_string())
}

fn emit<T: Serialize>(plain: bool, value: &T, plain_text: impl FnOnce() -> String) {
    if plain {
        println!("{}", plain_text());
    } else {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    }
}

fn parse_pairs(spec: &str) -> CliResult<Vec<(usize, usize)>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| format!("bad pair {pair:?}, expected a-b"))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| format!("bad vertex in {pair:?}"))?;
            let b = b
                .trim()
                .parse()
                .map_err(|_| format!("bad vertex in {pair:?}"))?;
            Ok((a, b))
        })
        .collect()
}

fn run(cli: Cli) -> CliResult<bool> {
    let plain = cli.plain;
    match cli.command {
        Command::Analyze { input } => {
            let g = read_graph(&input)?;
            let cert = recognize_h(&g);
            let out = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "sigma2": g.sigma2(),
                "connected": g.is_connected(),
                "degrees": g.degree_sequence(),
                "h_certificate": cert,
            });
            emit(plain, &out, || {
                format!(
                    "n = {}, edges = {}, sigma2 = {}, connected = {}\ndegrees = {:?}\nH: {}",
                    g.n(),
                    g.edge_count(),
                    g.sigma2(),
                    g.is_connected(),
                    g.degree_sequence(),
                    cert.as_ref()
                        .map_or("no".to_string(), |c| format!("m = {}, k = {}", c.m, c.k))
                )
            });
            Ok(true)
        }
        Command::Solve {
            k,
            mode,
            trace,
            input,
        } => {
            let g = read_graph(&input)?;
            let mode = match mode {
                SolveMode::Exact => Mode::Exact,
                SolveMode::Improving => Mode::Improving,
            };
            let solved = solve(&g, k, mode).map_err(|e| e.to_string())?;
            let mut out = serde_json::to_value(solved.outcome.to_json()).expect("serializable");
            if trace {
                out["trace"] = serde_json::to_value(&solved.trace).expect("serializable");
            }
            emit(plain, &out, || match solved.outcome.to_json() {
                kended::solver::OutcomeJson::Tree(t) => {
                    format!(
                        "tree with {} leaves: parent = {:?}",
                        t.leaves.len(),
                        t.parent
                    )
                }
                kended::solver::OutcomeJson::Exceptional { certificate: c } => format!(
                    "exceptional H(m = {}, k = {}): A = {:?}, B = {:?}",
                    c.m, c.k, c.a, c.b
                ),
            });
            Ok(true)
        }
        Command::Mlst { enumerate, input } => {
            let g = read_graph(&input)?;
            let cfg = oracle_config()?;
            let best = if enumerate {
                mlst::min_leaf_tree_enumerate(&g, u128::MAX)
            } else {
                mlst::min_leaf_tree(&g, cfg)
            }
            .map_err(|e| e.to_string())?;
            let out = json!({
                "min_leaves": best.leaves,
                "witness": best.tree.to_json(),
            });
            emit(plain, &out, || {
                format!("min leaves = {}, parent = {:?}", best.leaves, best.parent())
            });
            Ok(true)
        }
        Command::GenH {
            m,
            k,
            extra_edges,
            extra_random,
            seed,
        } => {
            let extra = match (extra_edges, extra_random) {
                (Some(spec), _) => parse_pairs(&spec)?,
                (None, Some(prob)) => {
                    if !(0.0..=1.0).contains(&prob) {
                        return Err("--extra-random must be within [0, 1]".into());
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut out = Vec::new();
                    for a in 0..m {
                        for b in a + 1..m {
                            if rng.gen_bool(prob) {
                                out.push((a, b));
                            }
                        }
                    }
                    out
                }
                (None, None) => Vec::new(),
            };
            let p = HParams::new(m, k, extra.clone()).map_err(|e| e.to_string())?;
            let g = construct_h(&p).map_err(|e| e.to_string())?;
            let g6 = g.to_graph6();
            let out = json!({ "m": m, "k": k, "extra_edges": extra, "graph6": g6 });
            emit(plain, &out, || g6.clone());
            Ok(true)
        }
        Command::Verify {
            theorem,
            n_max,
            dedup,
            jobs,
            graph6_file,
            m_max,
            k_max,
        } => {
            let cfg = oracle_config()?;
            let graphs = || -> CliResult<Vec<Graph>> {
                match &graph6_file {
                    Some(path) => {
                        let text =
                            std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
                        harness::read_graph6(&text).map_err(|e| e.to_string())
                    }
                    None => harness::sweep_graphs(1, n_max, dedup).map_err(|e| e.to_string()),
                }
            };
            harness::with_jobs(jobs, || -> CliResult<bool> {
                match theorem {
                    Theorem::Main => {
                        let r = harness::verify_theorem_main(&graphs()?, cfg);
                        emit(plain, &r, || {
                            format!(
                                "graphs {}, instances {}, trees {}, exceptional {}, violations {}",
                                r.graphs_checked,
                                r.hypothesis_instances,
                                r.trees_found,
                                r.exceptional_found,
                                r.violations.len()
                            )
                        });
                        Ok(r.is_clean())
                    }
                    Theorem::Baselines => {
                        let r = harness::verify_baselines(&graphs()?, cfg);
                        emit(plain, &r, || {
                            format!(
                                "graphs {}, ore instances {}, degree-sum instances {}, violations {}",
                                r.graphs_checked,
                                r.ore_instances,
                                r.degree_sum_instances,
                                r.violations.len()
                            )
                        });
                        Ok(r.violations.is_empty())
                    }
                    Theorem::Sharpness => {
                        let scfg = SharpnessConfig {
                            oracle: cfg,
                            ..SharpnessConfig::default()
                        };
                        let r = harness::verify_sharpness(m_max, k_max, scfg);
                        emit(plain, &r, || {
                            format!(
                                "instances {}, trees enumerated {}, violations {}",
                                r.instances_checked,
                                r.trees_enumerated,
                                r.violations.len()
                            )
                        });
                        Ok(r.violations.is_empty())
                    }
                }
            })
        }
        Command::LongestPath { mode, seed, input } => {
            let g = read_graph(&input)?;
            let p = match mode {
                PathMode::Exact => longest_path_exact(&g).map_err(|e| e.to_string())?,
                PathMode::Heuristic => {
                    if !g.is_connected() {
                        return Err("graph is disconnected".into());
                    }
                    longest_path_heuristic(&g, seed)
                }
            };
            let out = json!({ "length": p.len(), "path": p.vertices() });
            emit(plain, &out, || {
                format!("{} vertices: {:?}", p.len(), p.vertices())
            });
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let plain = cli.plain;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if plain {
                eprintln!("error: {e}");
            } else {
                eprintln!("{}", json!({ "error": e }));
            }
            ExitCode::from(2)
        }
    }
}
