use alloc::vec;
use alloc::vec::Vec;

use super::{IterationParams, VertexScores};
use crate::error::{Error, Result};
use crate::graph::WordGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub auth: VertexScores,
    pub hub: VertexScores,
    pub iterations: usize,
    pub converged: bool,
}

/// How authority and hub scores are folded into a single rank.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HitsVariant {
    /// authority
    #[default]
    R1,
    /// hub
    R2,
    /// mean of authority and hub
    R3,
    /// max of authority and hub
    R4,
}

pub fn hits(g: &WordGraph, params: &IterationParams) -> HitsResult {
    hits_observed(g, params, |_, _| {})
}

/// HITS power iteration. `observer` sees the normalized vectors after every sweep.
///
/// Each sweep sets `auth(v)` to the sum of `hub` over in-edges, then `hub(v)`
/// to the sum of the new `auth` over out-edges, then scales both to unit L2
/// norm. Parallel edges contribute once each. Iteration stops when no entry
/// of either vector moves by `tolerance` or more.
pub fn hits_observed<F>(g: &WordGraph, params: &IterationParams, mut observer: F) -> HitsResult
where
    F: FnMut(&[f64], &[f64]),
{
    let n = g.vertex_count();
    let mut auth = vec![1.0; n];
    let mut hub = vec![1.0; n];
    let mut next_auth = vec![0.0; n];
    let mut next_hub = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iterations {
        iterations += 1;
        for v in g.vertices() {
            next_auth[v.0] = g.in_edges(v).map(|e| hub[e.src.0]).sum();
        }
        normalize_l2(&mut next_auth);
        for v in g.vertices() {
            next_hub[v.0] = g.out_edges(v).map(|e| next_auth[e.tgt.0]).sum();
        }
        normalize_l2(&mut next_hub);
        let delta = max_change(&auth, &next_auth).max(max_change(&hub, &next_hub));
        core::mem::swap(&mut auth, &mut next_auth);
        core::mem::swap(&mut hub, &mut next_hub);
        observer(&auth, &hub);
        if delta < params.tolerance {
            converged = true;
            break;
        }
    }
    HitsResult {
        auth: VertexScores(auth),
        hub: VertexScores(hub),
        iterations,
        converged,
    }
}

// Scaling before the next sweep gives the same direction as scaling at the end.
fn normalize_l2(v: &mut [f64]) {
    let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn max_change(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn hits_rank(
    auth: &VertexScores,
    hub: &VertexScores,
    variant: HitsVariant,
) -> Result<VertexScores> {
    if auth.len() != hub.len() {
        return Err(Error::MismatchedScores(auth.len(), hub.len()));
    }
    let combined: Vec<f64> = match variant {
        HitsVariant::R1 => auth.0.clone(),
        HitsVariant::R2 => hub.0.clone(),
        HitsVariant::R3 => auth.0.iter().zip(&hub.0).map(|(a, h)| 0.5 * (a + h)).collect(),
        HitsVariant::R4 => auth.0.iter().zip(&hub.0).map(|(a, h)| a.max(*h)).collect(),
    };
    Ok(VertexScores(combined))
}
