use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Edge, WordGraph};
use crate::corpus::TokenizedDocument;
use crate::error::{Error, Result};

/// How edge weights are derived from the text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Weighting {
    /// Conditional bigram frequency `count(prev, word) / count(prev, *)` over
    /// the whole document. Sentence boundaries are pseudo-tokens, so the first
    /// edge of a sentence is conditioned on the sentence start and the
    /// sentence end counts as a follower of the last word.
    #[default]
    Bigram,
    Uniform,
    /// `ln(1 + count(prev, word))`.
    LogCount,
}

impl Weighting {
    pub const ALL: [Weighting; 3] = [Weighting::Bigram, Weighting::Uniform, Weighting::LogCount];

    pub fn as_str(self) -> &'static str {
        match self {
            Weighting::Bigram => "bigram",
            Weighting::Uniform => "uniform",
            Weighting::LogCount => "logcount",
        }
    }
}

impl core::str::FromStr for Weighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Weighting::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or(Error::InvalidParameter("weighting must be bigram, uniform or logcount"))
    }
}

/// Builds one linear chain per sentence between a shared start and end vertex.
///
/// A sentence of `n` tokens adds `n - 1` interior vertices and `n` edges; edge
/// `i` carries the stem of token `i`. Vertex 0 is the start, interior vertices
/// follow in sentence order and the end vertex has the largest id.
pub fn build_word_graph(doc: &TokenizedDocument, weighting: Weighting) -> Result<WordGraph> {
    let sentences: Vec<&[crate::Token]> = doc
        .sentences
        .iter()
        .map(Vec::as_slice)
        .filter(|s| !s.is_empty())
        .collect();
    if sentences.is_empty() {
        return Err(Error::EmptyDocument);
    }

    // None stands for the sentence boundary
    let mut pair_counts: BTreeMap<(Option<&str>, Option<&str>), usize> = BTreeMap::new();
    let mut follower_totals: BTreeMap<Option<&str>, usize> = BTreeMap::new();
    for sentence in &sentences {
        let mut prev = None;
        for tok in sentence.iter().map(|t| Some(t.stem.as_str())).chain([None]) {
            *pair_counts.entry((prev, tok)).or_default() += 1;
            *follower_totals.entry(prev).or_default() += 1;
            prev = tok;
        }
    }
    let weight_of = |prev: Option<&str>, word: &str| -> f64 {
        let count = pair_counts[&(prev, Some(word))];
        match weighting {
            Weighting::Uniform => 1.0,
            Weighting::LogCount => libm::log1p(count as f64),
            Weighting::Bigram => count as f64 / follower_totals[&prev] as f64,
        }
    };

    let interior: usize = sentences.iter().map(|s| s.len() - 1).sum();
    let start = 0;
    let end = interior + 1;
    let mut edges = Vec::with_capacity(interior + sentences.len());
    let mut next = 1;
    for sentence in &sentences {
        let mut from = start;
        let mut prev = None;
        for (i, tok) in sentence.iter().enumerate() {
            let to = if i + 1 == sentence.len() {
                end
            } else {
                next += 1;
                next - 1
            };
            edges.push(Edge::new(from, to, tok.stem.clone(), weight_of(prev, &tok.stem)));
            from = to;
            prev = Some(tok.stem.as_str());
        }
    }
    WordGraph::new(end + 1, start, end, edges)
}
