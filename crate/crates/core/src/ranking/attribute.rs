use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::str::FromStr;

use super::{AlgorithmId, VertexScores};
use crate::error::{Error, Result};
use crate::graph::WordGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Aggregate {
    #[default]
    Sum,
    Max,
    Mean,
}

impl Aggregate {
    pub const ALL: [Aggregate; 3] = [Aggregate::Sum, Aggregate::Max, Aggregate::Mean];

    pub fn as_str(self) -> &'static str {
        match self {
            Aggregate::Sum => "sum",
            Aggregate::Max => "max",
            Aggregate::Mean => "mean",
        }
    }
}

impl FromStr for Aggregate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Aggregate::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or(Error::InvalidParameter("aggregate must be sum, max or mean"))
    }
}

/// Words ordered by descending score; equal scores fall back to code point order.
#[derive(Debug, Clone, PartialEq)]
pub struct WordRanking {
    pub entries: Vec<(String, f64)>,
    pub algorithm: AlgorithmId,
    /// `(|V|, |E|)` of the ranked graph.
    pub graph_stats: (usize, usize),
    pub converged: bool,
    pub iterations: usize,
}

impl WordRanking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(w, _)| w.as_str())
    }
}

#[derive(Default)]
struct Acc {
    sum: f64,
    max: f64,
    count: usize,
}

/// Scores each edge label by aggregating the scores of the vertices its edges
/// point to. Only targets matter, so the start vertex never contributes.
pub fn attribute_scores_to_words(
    g: &WordGraph,
    scores: &VertexScores,
    aggregate: Aggregate,
) -> Result<WordRanking> {
    if scores.len() != g.vertex_count() {
        return Err(Error::MismatchedScores(scores.len(), g.vertex_count()));
    }
    let mut per_word: BTreeMap<&str, Acc> = BTreeMap::new();
    for e in g.edges() {
        let s = scores.get(e.tgt);
        let acc = per_word.entry(e.label.as_str()).or_default();
        acc.max = if acc.count == 0 { s } else { acc.max.max(s) };
        acc.sum += s;
        acc.count += 1;
    }
    let mut entries: Vec<(String, f64)> = per_word
        .into_iter()
        .map(|(w, acc)| {
            let score = match aggregate {
                Aggregate::Sum => acc.sum,
                Aggregate::Max => acc.max,
                Aggregate::Mean => acc.sum / acc.count as f64,
            };
            (w.to_string(), score)
        })
        .collect();
    // stable sort keeps the BTreeMap (code point) order among ties
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal));
    Ok(WordRanking {
        entries,
        algorithm: AlgorithmId::MinMax,
        graph_stats: (g.vertex_count(), g.edge_count()),
        converged: true,
        iterations: 0,
    })
}
