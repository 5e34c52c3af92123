use alloc::vec;

use super::{IterationParams, VertexScores};
use crate::graph::WordGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankResult {
    pub scores: VertexScores,
    pub iterations: usize,
    pub converged: bool,
}

pub fn pagerank(g: &WordGraph, params: &IterationParams) -> PageRankResult {
    pagerank_observed(g, params, |_| {})
}

/// Power iteration of `PR(v) = (1-d)/N + d * sum PR(u)/out_deg(u)` over in-edges.
///
/// Mass sitting on dangling vertices (out-degree 0, which includes the end
/// vertex) is spread uniformly over all vertices every sweep, and the vector
/// is rescaled to unit L1 norm. Edge weights are not used.
pub fn pagerank_observed<F>(g: &WordGraph, params: &IterationParams, mut observer: F) -> PageRankResult
where
    F: FnMut(&[f64]),
{
    let n = g.vertex_count();
    let nf = n as f64;
    let d = params.damping;
    let out_deg: alloc::vec::Vec<f64> = g.vertices().map(|v| g.outgoing(v).len() as f64).collect();

    let mut pr = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iterations {
        iterations += 1;
        let dangling: f64 = g
            .vertices()
            .filter(|v| out_deg[v.0] == 0.0)
            .map(|v| pr[v.0])
            .sum();
        let base = (1.0 - d) / nf + d * dangling / nf;
        for v in g.vertices() {
            let inflow: f64 = g.in_edges(v).map(|e| pr[e.src.0] / out_deg[e.src.0]).sum();
            next[v.0] = base + d * inflow;
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let delta = pr
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        core::mem::swap(&mut pr, &mut next);
        observer(&pr);
        if delta < params.tolerance {
            converged = true;
            break;
        }
    }
    PageRankResult {
        scores: VertexScores(pr),
        iterations,
        converged,
    }
}
