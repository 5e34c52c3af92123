//! Word graphs built from POS-tagged text, and graph-based word ranking.
//!
//! The crate is `no_std` (it needs `alloc`). It covers four areas:
//!
//! - [`corpus`]: reading `surface/TAG` corpora, suffix stemming, stop-word removal.
//! - [`graph`]: the edge-labeled, edge-weighted DAG ([`WordGraph`]) with its
//!   structural algorithms (topological order, density, path counting,
//!   label-sequence reduction, vertex merging, parser steps).
//! - [`ranking`]: prefix-score, reference-score, HITS, positional power function
//!   and PageRank vertex scores, plus attribution of vertex scores to words.
//! - [`eval`]: gold sets, confusion counts and precision / recall / F1.
//!
//! File IO, configuration files and the command-line tool live in the
//! `wordrank` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod corpus;
pub mod error;
pub mod eval;
pub mod graph;
pub mod ranking;

pub use corpus::{PreprocessConfig, Token, TokenizedDocument};
pub use error::{Error, Result};
pub use eval::{ConfusionCounts, EvalReport, GoldSet};
pub use graph::{Edge, TopologicalOrder, VertexId, Weighting, WordGraph};
pub use ranking::{AlgorithmId, IterationParams, VertexScores, WordRanking};
