//! Skew-rank of oriented graphs.
//!
//! The skew-adjacency matrix `S(G)` of an oriented graph has `+1` at
//! `(u, v)` for an arc `u -> v`, `-1` at `(v, u)`, and `0` elsewhere. Its
//! rank is the skew-rank `sr(G)`. This crate computes it exactly and checks
//! the structural statements that predict it from the underlying graph.

pub mod classify;
pub mod error;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod matching;
pub mod reductions;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{OrientedGraph, Vertex};
pub use linalg::skew_rank;
