//! Word graphs: directed acyclic multigraphs with labeled, weighted edges and
//! a unique start and end vertex.
//!
//! A [`WordGraph`] is immutable. Every constructor validates the structural
//! invariants, and operations that change the graph return a new value.

mod build;
mod count;
mod merge;
mod reduce;

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::error::{Error, Result};

pub use build::{build_word_graph, Weighting};
pub use count::{count_paths, count_paths_capped, parser_steps, parser_steps_with, CountCap, ParserInit};
pub use merge::{compress, merge_vertices};
pub use reduce::reduce_to_unique_label_sequences;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub tgt: VertexId,
    pub label: String,
    pub weight: f64,
}

impl Edge {
    pub fn new(src: usize, tgt: usize, label: impl Into<String>, weight: f64) -> Self {
        Edge {
            src: VertexId(src),
            tgt: VertexId(tgt),
            label: label.into(),
            weight,
        }
    }
}

/// A topological numbering of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalOrder {
    pub order: Vec<VertexId>,
    /// 1-based rank of each vertex in `order`.
    pub position: Vec<usize>,
}

impl TopologicalOrder {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rank(&self, v: VertexId) -> usize {
        self.position[v.0]
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexId> + '_ {
        self.order.iter().copied()
    }
}

#[derive(Clone)]
pub struct WordGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    start: VertexId,
    end: VertexId,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    topo: TopologicalOrder,
}

impl fmt::Debug for WordGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordGraph")
            .field("vertex_count", &self.vertex_count)
            .field("start", &self.start)
            .field("end", &self.end)
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for WordGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.start == other.start
            && self.end == other.end
            && self.edges == other.edges
    }
}

impl WordGraph {
    /// Builds and validates a word graph.
    ///
    /// Fails unless the edges form a DAG over `0..vertex_count` whose only
    /// source is `start` and whose only sink is `end`. Those two conditions
    /// already imply that every vertex lies on a start-to-end path.
    pub fn new(vertex_count: usize, start: usize, end: usize, edges: Vec<Edge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for &v in &[start, end] {
            if v >= vertex_count {
                return Err(Error::UnknownVertex(v));
            }
        }
        let mut incoming = vec![Vec::new(); vertex_count];
        let mut outgoing = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            for v in [e.src.0, e.tgt.0] {
                if v >= vertex_count {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if e.src == e.tgt {
                return Err(Error::Cycle);
            }
            if e.label.is_empty() {
                return Err(Error::InvalidGraph(format!("edge {i} has an empty label")));
            }
            if !e.weight.is_finite() {
                return Err(Error::InvalidGraph(format!("edge {i} has a non-finite weight")));
            }
            outgoing[e.src.0].push(i);
            incoming[e.tgt.0].push(i);
        }
        let topo = kahn(vertex_count, &edges)?;

        if vertex_count == 1 {
            if start != end {
                return Err(Error::InvalidGraph("single-vertex graph needs start == end".into()));
            }
        } else if start == end {
            return Err(Error::InvalidGraph("start and end must differ".into()));
        }
        for v in 0..vertex_count {
            if incoming[v].is_empty() && v != start {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has no incoming edge but is not the start vertex"
                )));
            }
            if outgoing[v].is_empty() && v != end {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has no outgoing edge but is not the end vertex"
                )));
            }
        }
        if !incoming[start].is_empty() {
            return Err(Error::InvalidGraph("start vertex has incoming edges".into()));
        }
        if !outgoing[end].is_empty() {
            return Err(Error::InvalidGraph("end vertex has outgoing edges".into()));
        }

        Ok(WordGraph {
            vertex_count,
            edges,
            start: VertexId(start),
            end: VertexId(end),
            incoming,
            outgoing,
            topo,
        })
    }

    /// Re-runs the structural checks. Always `Ok` for a value obtained from
    /// [`WordGraph::new`]; kept as an explicit checker for tests.
    pub fn validate(&self) -> Result<()> {
        WordGraph::new(
            self.vertex_count,
            self.start.0,
            self.end.0,
            self.edges.clone(),
        )
        .map(|_| ())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.vertex_count
    }

    /// Indices of the edges entering `v`.
    pub fn incoming(&self, v: VertexId) -> &[usize] {
        &self.incoming[v.0]
    }

    /// Indices of the edges leaving `v`.
    pub fn outgoing(&self, v: VertexId) -> &[usize] {
        &self.outgoing[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.incoming[v.0].iter().map(move |&i| &self.edges[i])
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.outgoing[v.0].iter().map(move |&i| &self.edges[i])
    }

    pub fn in_degree(&self, v: VertexId) -> Result<usize> {
        self.check(v)?;
        Ok(self.incoming[v.0].len())
    }

    pub fn out_degree(&self, v: VertexId) -> Result<usize> {
        self.check(v)?;
        Ok(self.outgoing[v.0].len())
    }

    /// The order computed during validation (Kahn's algorithm, smallest id first).
    pub fn topological_order(&self) -> &TopologicalOrder {
        &self.topo
    }

    pub(crate) fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.0))
        }
    }

    /// True when `to` can be reached from `from` through at least one edge.
    pub fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack: Vec<usize> = self.outgoing[from.0]
            .iter()
            .map(|&e| self.edges[e].tgt.0)
            .collect();
        while let Some(v) = stack.pop() {
            if v == to.0 {
                return true;
            }
            if core::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(self.outgoing[v].iter().map(|&e| self.edges[e].tgt.0));
        }
        false
    }
}

pub fn in_degree(g: &WordGraph, v: VertexId) -> Result<usize> {
    g.in_degree(v)
}

pub fn out_degree(g: &WordGraph, v: VertexId) -> Result<usize> {
    g.out_degree(v)
}

/// Kahn's algorithm with ascending-id tie-break. Fails on any directed cycle.
pub fn topological_order(g: &WordGraph) -> Result<TopologicalOrder> {
    kahn(g.vertex_count, &g.edges)
}

fn kahn(vertex_count: usize, edges: &[Edge]) -> Result<TopologicalOrder> {
    let mut indeg = vec![0usize; vertex_count];
    let mut succ = vec![Vec::new(); vertex_count];
    for e in edges {
        indeg[e.tgt.0] += 1;
        succ[e.src.0].push(e.tgt.0);
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..vertex_count)
        .filter(|&v| indeg[v] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(vertex_count);
    let mut position = vec![0usize; vertex_count];
    while let Some(Reverse(v)) = ready.pop() {
        order.push(VertexId(v));
        position[v] = order.len();
        for &t in &succ[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    if order.len() != vertex_count {
        return Err(Error::Cycle);
    }
    Ok(TopologicalOrder { order, position })
}

/// Transcript-independent density: the mean number of edges "in flight"
/// over the topological positions.
///
/// The running count drops by the in-degree and grows by the out-degree of
/// each vertex before being accumulated.
pub fn density(g: &WordGraph) -> f64 {
    let mut active: i64 = 0;
    let mut total: i64 = 0;
    for v in g.topo.iter() {
        active -= g.incoming[v.0].len() as i64;
        active += g.outgoing[v.0].len() as i64;
        total += active;
    }
    total as f64 / g.vertex_count as f64
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn chain() -> WordGraph {
        WordGraph::new(3, 0, 2, vec![Edge::new(0, 1, "a", 1.0), Edge::new(1, 2, "b", 2.0)]).unwrap()
    }

    pub fn diamond() -> WordGraph {
        WordGraph::new(
            4,
            0,
            3,
            vec![
                Edge::new(0, 1, "x", 1.0),
                Edge::new(0, 2, "x", 1.0),
                Edge::new(1, 3, "y", 1.0),
                Edge::new(2, 3, "y", 1.0),
            ],
        )
        .unwrap()
    }

    pub fn single_edge() -> WordGraph {
        WordGraph::new(2, 0, 1, vec![Edge::new(0, 1, "a", 1.0)]).unwrap()
    }

    pub fn lattice() -> WordGraph {
        let stages: [f64; 5] = [0.5, 0.25, 0.125, 0.125, 0.125];
        let mut edges = Vec::new();
        for (s, w) in stages.iter().enumerate() {
            for (k, m) in [1.0, 1.0, 0.0, -1.0, -1.0].iter().enumerate() {
                edges.push(Edge::new(s, s + 1, format!("w{s}{k}"), w * m));
            }
        }
        WordGraph::new(6, 0, 5, edges).unwrap()
    }
}
