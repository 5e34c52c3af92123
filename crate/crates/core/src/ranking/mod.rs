//! Vertex scoring algorithms and their projection onto words.
//!
//! Every algorithm produces a [`VertexScores`] vector indexed by vertex id.
//! [`attribute_scores_to_words`] then scores each edge label by the vertices
//! its edges lead into, and [`rank_words`] ties both steps together behind a
//! stable [`AlgorithmId`].

mod attribute;
mod hits;
mod pagerank;
mod ppf;
mod prefix;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WordGraph};

pub use attribute::{attribute_scores_to_words, Aggregate, WordRanking};
pub use hits::{hits, hits_observed, hits_rank, HitsResult, HitsVariant};
pub use pagerank::{pagerank, pagerank_observed, PageRankResult};
pub use ppf::ppf;
pub use prefix::{prefix_scores, reference_rank, PrefixScores, ReferenceRanker};

/// One score per vertex, indexed by [`VertexId`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VertexScores(Vec<f64>);

impl VertexScores {
    pub fn new(scores: Vec<f64>) -> Self {
        VertexScores(scores)
    }

    pub fn get(&self, v: VertexId) -> f64 {
        self.0[v.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.0.iter().enumerate().map(|(i, &s)| (VertexId(i), s))
    }
}

impl From<Vec<f64>> for VertexScores {
    fn from(v: Vec<f64>) -> Self {
        VertexScores(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationParams {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for IterationParams {
    fn default() -> Self {
        IterationParams {
            damping: 0.85,
            tolerance: 1e-8,
            max_iterations: 100,
        }
    }
}

impl IterationParams {
    pub fn new(damping: f64, tolerance: f64, max_iterations: usize) -> Result<Self> {
        let p = IterationParams {
            damping,
            tolerance,
            max_iterations,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidParameter("damping must lie in (0, 1)"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidParameter("tolerance must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgorithmId {
    MinMax,
    RefScore,
    Hits(HitsVariant),
    Ppf,
    PageRank,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 8] = [
        AlgorithmId::MinMax,
        AlgorithmId::RefScore,
        AlgorithmId::Hits(HitsVariant::R1),
        AlgorithmId::Hits(HitsVariant::R2),
        AlgorithmId::Hits(HitsVariant::R3),
        AlgorithmId::Hits(HitsVariant::R4),
        AlgorithmId::Ppf,
        AlgorithmId::PageRank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::MinMax => "minmax",
            AlgorithmId::RefScore => "refscore",
            AlgorithmId::Hits(HitsVariant::R1) => "hits-r1",
            AlgorithmId::Hits(HitsVariant::R2) => "hits-r2",
            AlgorithmId::Hits(HitsVariant::R3) => "hits-r3",
            AlgorithmId::Hits(HitsVariant::R4) => "hits-r4",
            AlgorithmId::Ppf => "ppf",
            AlgorithmId::PageRank => "pagerank",
        }
    }

    /// The five algorithm families compared side by side, one HITS variant standing in for HITS.
    pub fn families(hits_variant: HitsVariant) -> [AlgorithmId; 5] {
        [
            AlgorithmId::MinMax,
            AlgorithmId::RefScore,
            AlgorithmId::Hits(hits_variant),
            AlgorithmId::Ppf,
            AlgorithmId::PageRank,
        ]
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(String::from(s)))
    }
}

/// Reference score used by the `refscore` algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RefScorePolicy {
    /// Midpoint of the end vertex's minimum and maximum prefix score.
    #[default]
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RankOptions {
    pub params: IterationParams,
    pub ref_score: RefScorePolicy,
    pub aggregate: Aggregate,
}

/// Scores every vertex with `algorithm` and attributes the scores to words.
pub fn rank_words(
    g: &WordGraph,
    algorithm: AlgorithmId,
    options: &RankOptions,
) -> Result<WordRanking> {
    let (scores, converged, iterations) = vertex_scores(g, algorithm, options)?;
    let mut ranking = attribute_scores_to_words(g, &scores, options.aggregate)?;
    ranking.algorithm = algorithm;
    ranking.converged = converged;
    ranking.iterations = iterations;
    Ok(ranking)
}

/// Vertex scores for `algorithm`, with the convergence flag and sweep count
/// (`true`, 0 for the non-iterative algorithms).
pub fn vertex_scores(
    g: &WordGraph,
    algorithm: AlgorithmId,
    options: &RankOptions,
) -> Result<(VertexScores, bool, usize)> {
    options.params.validate()?;
    Ok(match algorithm {
        AlgorithmId::MinMax => (spread_rank(&prefix_scores(g)), true, 0),
        AlgorithmId::RefScore => {
            let ranker = ReferenceRanker::new(g);
            let reference = match options.ref_score {
                RefScorePolicy::Fixed(x) => x,
                RefScorePolicy::Auto => {
                    let p = ranker.prefix();
                    0.5 * (p.min(g.end()) + p.max(g.end()))
                }
            };
            let scores = g
                .vertices()
                .map(|v| ranker.rank(v, reference))
                .collect::<Result<Vec<_>>>()?;
            (VertexScores(scores), true, 0)
        }
        AlgorithmId::Hits(variant) => {
            let r = hits(g, &options.params);
            (hits_rank(&r.auth, &r.hub, variant)?, r.converged, r.iterations)
        }
        AlgorithmId::Ppf => (ppf(g), true, 0),
        AlgorithmId::PageRank => {
            let r = pagerank(g, &options.params);
            (r.scores, r.converged, r.iterations)
        }
    })
}

/// `max_score - min_score` per vertex, rescaled to `[0, 1]` across vertices.
/// All scores are 0 when every vertex has the same spread.
fn spread_rank(prefix: &PrefixScores) -> VertexScores {
    let spread: Vec<f64> = prefix
        .min_score
        .iter()
        .zip(&prefix.max_score)
        .map(|(lo, hi)| hi - lo)
        .collect();
    let lo = spread.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = spread.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    VertexScores(
        spread
            .into_iter()
            .map(|s| if range > 0.0 { (s - lo) / range } else { 0.0 })
            .collect(),
    )
}
