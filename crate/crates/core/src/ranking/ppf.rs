use alloc::vec;
use alloc::vec::Vec;

use super::VertexScores;
use crate::graph::WordGraph;

/// Positional power function: for every start-to-v path, the weight of its
/// i-th edge divided by i, summed over all edges and all paths.
///
/// Computed with a DP indexed by path length. For each vertex and length `k`,
/// `count[k]` is the number of start paths of that length and `sum[k]` the
/// total of their positional sums; an edge `u -> v` of weight `w` feeds
/// `sum_v[k] += sum_u[k-1] + count_u[k-1] * w / k`.
pub fn ppf(g: &WordGraph) -> VertexScores {
    let n = g.vertex_count();
    let mut layers: Vec<Layer> = vec![Layer::default(); n];
    layers[g.start().0] = Layer {
        shortest: 0,
        count: vec![1.0],
        sum: vec![0.0],
    };
    for v in g.topological_order().iter() {
        if v == g.start() {
            continue;
        }
        let shortest = g
            .in_edges(v)
            .map(|e| layers[e.src.0].shortest + 1)
            .min()
            .unwrap_or(0);
        let longest = g
            .in_edges(v)
            .map(|e| layers[e.src.0].shortest + layers[e.src.0].count.len())
            .max()
            .unwrap_or(0);
        let width = longest + 1 - shortest;
        let mut layer = Layer {
            shortest,
            count: vec![0.0; width],
            sum: vec![0.0; width],
        };
        for e in g.in_edges(v) {
            let pred = &layers[e.src.0];
            for (j, (&c, &s)) in pred.count.iter().zip(&pred.sum).enumerate() {
                let k = pred.shortest + j + 1;
                let slot = k - shortest;
                layer.count[slot] += c;
                layer.sum[slot] += s + c * e.weight / k as f64;
            }
        }
        layers[v.0] = layer;
    }
    VertexScores(layers.iter().map(|l| l.sum.iter().sum()).collect())
}

#[derive(Debug, Clone, Default)]
struct Layer {
    shortest: usize,
    count: Vec<f64>,
    sum: Vec<f64>,
}
