//! Browser bindings. Every function takes graph6 text and returns JSON.

use serde_json::json;
use wasm_bindgen::prelude::*;

use kended::hfamily::{construct_h, recognize_h, HParams};
use kended::solver::{solve as solve_graph, Mode};
use kended::Graph;

fn parse(graph6: &str) -> Result<Graph, String> {
    Graph::parse_graph6(graph6.trim()).map_err(|e| e.to_string())
}

/// Size, σ₂, degrees, edges and family membership.
#[wasm_bindgen]
pub fn analyze(graph6: &str) -> Result<String, String> {
    let g = parse(graph6)?;
    let sigma2 = g.sigma2();
    let suggested_k = match sigma2.finite() {
        Some(s) => g.n().saturating_sub(s).max(2),
        None => 2,
    };
    Ok(json!({
        "n": g.n(),
        "edges": g.edges(),
        "sigma2": sigma2,
        "connected": g.is_connected(),
        "degrees": g.degree_sequence(),
        "suggested_k": suggested_k,
        "h_certificate": recognize_h(&g),
    })
    .to_string())
}

/// A spanning tree with at most `k` leaves, or the family certificate.
#[wasm_bindgen]
pub fn solve(graph6: &str, k: usize, improving: bool) -> Result<String, String> {
    let g = parse(graph6)?;
    let mode = if improving {
        Mode::Improving
    } else {
        Mode::Exact
    };
    let solved = solve_graph(&g, k, mode).map_err(|e| e.to_string())?;
    let mut out = serde_json::to_value(solved.outcome.to_json()).map_err(|e| e.to_string())?;
    out["trace"] = serde_json::to_value(&solved.trace).map_err(|e| e.to_string())?;
    Ok(out.to_string())
}

/// `H(m, k, S)` as graph6; `extra` lists A-pairs like `"0-1,1-2"`.
#[wasm_bindgen]
pub fn gen_h(m: usize, k: usize, extra: &str) -> Result<String, String> {
    let mut pairs = Vec::new();
    for item in extra.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = item
            .split_once('-')
            .ok_or_else(|| format!("bad pair {item:?}"))?;
        let a = a.trim().parse().map_err(|_| format!("bad pair {item:?}"))?;
        let b = b.trim().parse().map_err(|_| format!("bad pair {item:?}"))?;
        pairs.push((a, b));
    }
    let p = HParams::new(m, k, pairs).map_err(|e| e.to_string())?;
    Ok(construct_h(&p).map_err(|e| e.to_string())?.to_graph6())
}
