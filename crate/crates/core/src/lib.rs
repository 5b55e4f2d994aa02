//! Spanning trees with few leaves under the degree-sum condition
//! `σ₂(G) ≥ |G| - k`.
//!
//! The [`solver`] either builds a spanning tree with at most `k` leaves or
//! certifies that the graph belongs to the exceptional family
//! `H(m, k, S)`: `K_{m,m+k}` plus any edges inside the `m`-side. The
//! [`mlst`] oracle, [`hfamily`] recognizer and [`harness`] sweeps check that
//! statement exhaustively on small graphs.

pub mod error;
pub mod graph;
pub mod harness;
pub mod hfamily;
pub mod longest_path;
pub mod mlst;
pub mod solver;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Graph, Sigma2, VertexSet};
pub use hfamily::{HCertificate, HParams};
pub use solver::{solve, Mode, SolveOutcome};
pub use tree::{Caterpillar, Path, SpanningTree};
