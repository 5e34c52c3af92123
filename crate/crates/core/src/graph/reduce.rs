use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Edge, WordGraph};
use crate::error::Result;

/// Rewrites the graph so that every start-to-end label sequence is carried by
/// exactly one path, keeping the set of sequences unchanged.
///
/// Vertices are visited from the start in breadth-first order. Each new vertex
/// stands for a set of original non-end vertices; the outgoing edges of such a
/// set are grouped by label, and a group becomes at most two edges: one into
/// the end vertex (if any edge of the group ends there) and one into the
/// vertex standing for the remaining targets. A group that is split this way
/// yields sequences of different lengths, so no sequence is duplicated.
///
/// When several original edges are folded into one, the new edge keeps the
/// largest of their weights.
pub fn reduce_to_unique_label_sequences(g: &WordGraph) -> Result<WordGraph> {
    let end = g.end().0;
    if g.vertex_count() == 1 {
        return Ok(g.clone());
    }

    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    let start_set = vec![g.start().0];
    ids.insert(start_set.clone(), 0);
    queue.push_back(start_set);

    // (src, target set or None for the end vertex, label, weight)
    let mut pending: Vec<(usize, Option<usize>, String, f64)> = Vec::new();
    while let Some(set) = queue.pop_front() {
        let src = ids[&set];
        let mut groups: BTreeMap<&str, Group> = BTreeMap::new();
        for &v in &set {
            for e in g.out_edges(super::VertexId(v)) {
                let group = groups.entry(e.label.as_str()).or_default();
                if e.tgt.0 == end {
                    group.to_end = Some(group.to_end.map_or(e.weight, |w: f64| w.max(e.weight)));
                } else {
                    group.targets.push(e.tgt.0);
                    group.inner_weight = Some(
                        group
                            .inner_weight
                            .map_or(e.weight, |w: f64| w.max(e.weight)),
                    );
                }
            }
        }
        for (label, mut group) in groups {
            if let Some(w) = group.to_end {
                pending.push((src, None, label.into(), w));
            }
            if let Some(w) = group.inner_weight {
                group.targets.sort_unstable();
                group.targets.dedup();
                let next_id = ids.len();
                let id = *ids.entry(group.targets.clone()).or_insert_with(|| {
                    queue.push_back(group.targets.clone());
                    next_id
                });
                pending.push((src, Some(id), label.into(), w));
            }
        }
    }

    let new_end = ids.len();
    let edges = pending
        .into_iter()
        .map(|(src, tgt, label, weight)| Edge::new(src, tgt.unwrap_or(new_end), label, weight))
        .collect();
    WordGraph::new(new_end + 1, 0, new_end, edges)
}

#[derive(Default)]
struct Group {
    targets: Vec<usize>,
    inner_weight: Option<f64>,
    to_end: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_paths, fixtures::*};
    use num_bigint::BigUint;

    #[test]
    fn collapses_duplicate_parallel_edges() {
        let g = WordGraph::new(2, 0, 1, vec![Edge::new(0, 1, "a", 0.2), Edge::new(0, 1, "a", 0.7)])
            .unwrap();
        let r = reduce_to_unique_label_sequences(&g).unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.edges(), &[Edge::new(0, 1, "a", 0.7)]);
    }

    #[test]
    fn diamond_with_shared_labels_becomes_chain() {
        let r = reduce_to_unique_label_sequences(&diamond()).unwrap();
        assert_eq!(r.vertex_count(), 3);
        assert_eq!(count_paths(&r).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn prefix_sequences_stay_distinct() {
        // sequences "a" and "a b"
        let g = WordGraph::new(
            3,
            0,
            2,
            vec![Edge::new(0, 2, "a", 1.0), Edge::new(0, 1, "a", 1.0), Edge::new(1, 2, "b", 1.0)],
        )
        .unwrap();
        let r = reduce_to_unique_label_sequences(&g).unwrap();
        assert_eq!(count_paths(&r).unwrap(), BigUint::from(2u32));
        assert_eq!(r.edge_count(), 3);
    }

    #[test]
    fn lattice_is_already_unique() {
        let f = lattice();
        let r = reduce_to_unique_label_sequences(&f).unwrap();
        assert_eq!(r, f);
    }

    #[test]
    fn single_vertex_graph_is_unchanged() {
        let g = WordGraph::new(1, 0, 0, vec![]).unwrap();
        assert_eq!(reduce_to_unique_label_sequences(&g).unwrap(), g);
    }
}
