use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{VertexId, WordGraph};

/// Minimum and maximum sum of edge weights over the start-to-v paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixScores {
    pub min_score: Vec<f64>,
    pub max_score: Vec<f64>,
}

impl PrefixScores {
    pub fn min(&self, v: VertexId) -> f64 {
        self.min_score[v.0]
    }

    pub fn max(&self, v: VertexId) -> f64 {
        self.max_score[v.0]
    }
}

/// Relaxes `min(u) + w` and `max(u) + w` over incoming edges in topological order.
///
/// The maximum starts from negative infinity rather than zero so that it is
/// the true path maximum when every path into a vertex has negative weight.
pub fn prefix_scores(g: &WordGraph) -> PrefixScores {
    let n = g.vertex_count();
    let mut min_score = vec![f64::INFINITY; n];
    let mut max_score = vec![f64::NEG_INFINITY; n];
    min_score[g.start().0] = 0.0;
    max_score[g.start().0] = 0.0;
    for v in g.topological_order().iter() {
        for e in g.in_edges(v) {
            min_score[v.0] = min_score[v.0].min(min_score[e.src.0] + e.weight);
            max_score[v.0] = max_score[v.0].max(max_score[e.src.0] + e.weight);
        }
    }
    PrefixScores {
        min_score,
        max_score,
    }
}

/// Reference-score rank of a vertex.
///
/// Returns 0 when the reference is at or below the vertex's minimum prefix
/// score and 1 when it is at or above the maximum. In between, each incoming
/// edge `u -> v` contributes `paths(u) / paths(v)` times the rank of `u`
/// against the reference reduced by the edge weight; the result is the
/// fraction of start-to-v paths whose weight stays under the reference.
pub struct ReferenceRanker<'g> {
    graph: &'g WordGraph,
    prefix: PrefixScores,
    paths: Vec<f64>,
}

impl<'g> ReferenceRanker<'g> {
    pub fn new(graph: &'g WordGraph) -> Self {
        let mut paths = vec![0.0; graph.vertex_count()];
        for v in graph.topological_order().iter() {
            paths[v.0] = if v == graph.start() {
                1.0
            } else {
                graph.in_edges(v).map(|e| paths[e.src.0]).sum()
            };
        }
        ReferenceRanker {
            graph,
            prefix: prefix_scores(graph),
            paths,
        }
    }

    pub fn prefix(&self) -> &PrefixScores {
        &self.prefix
    }

    /// The recursion is unrolled onto an explicit stack; its cost grows with
    /// the number of start-to-v paths that the clamps do not cut off.
    pub fn rank(&self, v: VertexId, reference: f64) -> Result<f64> {
        self.graph.check(v)?;
        let mut total = 0.0;
        let mut stack = vec![(v, reference, 1.0)];
        while let Some((x, r, share)) = stack.pop() {
            if r <= self.prefix.min(x) {
                continue;
            }
            if r >= self.prefix.max(x) {
                total += share;
                continue;
            }
            let here = self.paths[x.0];
            for e in self.graph.in_edges(x) {
                stack.push((e.src, r - e.weight, share * self.paths[e.src.0] / here));
            }
        }
        Ok(total)
    }
}

pub fn reference_rank(g: &WordGraph, v: VertexId, reference: f64) -> Result<f64> {
    ReferenceRanker::new(g).rank(v, reference)
}
