use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{reduce_to_unique_label_sequences, Edge, VertexId, WordGraph};
use crate::error::{Error, Result};

/// Folds `v2` into `v1`.
///
/// Edges entering `v2` are redirected to `v1` unless `v1` already has an edge
/// from the same source with the same label; edges leaving `v2` are moved to
/// `v1` under the mirrored guard. `v2` is then removed and every id above it
/// shifts down by one.
pub fn merge_vertices(g: &WordGraph, v1: VertexId, v2: VertexId) -> Result<WordGraph> {
    g.check(v1)?;
    g.check(v2)?;
    if v1 == v2 {
        return Err(Error::InvalidParameter("cannot merge a vertex with itself"));
    }
    if g.reaches(v1, v2) || g.reaches(v2, v1) {
        return Err(Error::MergeCycle(v1.0, v2.0));
    }

    let mut into_v1: BTreeSet<(usize, &str)> =
        g.in_edges(v1).map(|e| (e.src.0, e.label.as_str())).collect();
    let mut from_v1: BTreeSet<(&str, usize)> =
        g.out_edges(v1).map(|e| (e.label.as_str(), e.tgt.0)).collect();

    let shift = |v: VertexId| if v.0 > v2.0 { v.0 - 1 } else { v.0 };
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (src, tgt) = if e.tgt == v2 {
            if !into_v1.insert((e.src.0, e.label.as_str())) {
                continue;
            }
            (e.src, v1)
        } else if e.src == v2 {
            if !from_v1.insert((e.label.as_str(), e.tgt.0)) {
                continue;
            }
            (v1, e.tgt)
        } else {
            (e.src, e.tgt)
        };
        edges.push(Edge::new(shift(src), shift(tgt), e.label.clone(), e.weight));
    }
    WordGraph::new(
        g.vertex_count() - 1,
        shift(g.start()),
        shift(g.end()),
        edges,
    )
}

/// Reduces the graph to unique label sequences, then merges every group of
/// vertices that accept the same set of label continuations.
///
/// The result carries the same label sequences as the input on the smallest
/// graph where each sequence has a single path.
pub fn compress(g: &WordGraph) -> Result<WordGraph> {
    let mut graph = reduce_to_unique_label_sequences(g)?;

    // bottom-up equivalence classes over (label, class of target) signatures
    let n = graph.vertex_count();
    let mut class = alloc::vec![usize::MAX; n];
    let mut classes: BTreeMap<(bool, Vec<(&str, usize)>), usize> = BTreeMap::new();
    for v in graph.topological_order().iter().rev() {
        let mut sig: Vec<(&str, usize)> = graph
            .out_edges(v)
            .map(|e| (e.label.as_str(), class[e.tgt.0]))
            .collect();
        sig.sort_unstable();
        sig.dedup();
        let next = classes.len();
        class[v.0] = *classes.entry((v == graph.start(), sig)).or_insert(next);
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, c) in class.iter().enumerate() {
        members.entry(*c).or_default().push(v);
    }
    let pairs: Vec<(usize, usize)> = members
        .values()
        .filter(|m| m.len() > 1)
        .flat_map(|m| m[1..].iter().map(move |&other| (m[0], other)))
        .collect();
    drop(classes);

    // original id -> current id
    let mut current: Vec<usize> = (0..n).collect();
    for (keep, gone) in pairs {
        let (k, d) = (current[keep], current[gone]);
        graph = merge_vertices(&graph, VertexId(k), VertexId(d))?;
        for c in current.iter_mut() {
            if *c == d {
                *c = if k > d { k - 1 } else { k };
            } else if *c > d {
                *c -= 1;
            }
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_paths, fixtures::*};
    use alloc::vec;
    use num_bigint::BigUint;

    #[test]
    fn diamond_with_matching_labels_collapses() {
        let m = merge_vertices(&diamond(), VertexId(1), VertexId(2)).unwrap();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edges(), &[Edge::new(0, 1, "x", 1.0), Edge::new(1, 2, "y", 1.0)]);
    }

    #[test]
    fn diamond_with_distinct_labels_keeps_parallel_edges() {
        let g = WordGraph::new(
            4,
            0,
            3,
            vec![
                Edge::new(0, 1, "x", 1.0),
                Edge::new(0, 2, "z", 1.0),
                Edge::new(1, 3, "y", 1.0),
                Edge::new(2, 3, "y", 1.0),
            ],
        )
        .unwrap();
        let m = merge_vertices(&g, VertexId(1), VertexId(2)).unwrap();
        assert_eq!(m.in_degree(VertexId(1)), Ok(2));
        assert_eq!(m.out_degree(VertexId(1)), Ok(1));
    }

    #[test]
    fn disjoint_neighbourhoods_add_degrees() {
        // 0 -> {1, 2} -> {3, 4} -> 5 with 1 feeding 3 and 2 feeding 4
        let g = WordGraph::new(
            6,
            0,
            5,
            vec![
                Edge::new(0, 1, "a", 1.0),
                Edge::new(0, 2, "b", 1.0),
                Edge::new(1, 3, "c", 1.0),
                Edge::new(2, 4, "d", 1.0),
                Edge::new(3, 5, "e", 1.0),
                Edge::new(4, 5, "f", 1.0),
            ],
        )
        .unwrap();
        let m = merge_vertices(&g, VertexId(1), VertexId(2)).unwrap();
        assert_eq!(m.vertex_count(), 5);
        assert_eq!(m.in_degree(VertexId(1)), Ok(2));
        assert_eq!(m.out_degree(VertexId(1)), Ok(2));
        // old vertex 3 and 4 shifted to 2 and 3
        assert_eq!(m.end(), VertexId(4));
    }

    #[test]
    fn merging_along_a_path_is_a_cycle_error() {
        assert_eq!(
            merge_vertices(&chain(), VertexId(0), VertexId(2)),
            Err(Error::MergeCycle(0, 2))
        );
        assert_eq!(
            merge_vertices(&chain(), VertexId(1), VertexId(0)),
            Err(Error::MergeCycle(1, 0))
        );
        assert_eq!(
            merge_vertices(&chain(), VertexId(1), VertexId(9)),
            Err(Error::UnknownVertex(9))
        );
        assert!(merge_vertices(&chain(), VertexId(1), VertexId(1)).is_err());
    }

    #[test]
    fn compress_shares_common_suffixes() {
        // "a x" and "b x" share the suffix after the first word
        let g = WordGraph::new(
            4,
            0,
            3,
            vec![
                Edge::new(0, 1, "a", 1.0),
                Edge::new(1, 3, "x", 1.0),
                Edge::new(0, 2, "b", 1.0),
                Edge::new(2, 3, "x", 1.0),
            ],
        )
        .unwrap();
        let c = compress(&g).unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.edge_count(), 3);
        assert_eq!(count_paths(&c).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn compress_lattice_keeps_structure() {
        let c = compress(&lattice()).unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(count_paths(&c).unwrap(), BigUint::from(3125u32));
    }
}
