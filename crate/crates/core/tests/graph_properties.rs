use num_bigint::BigUint;
use proptest::prelude::*;
use wordrank_core::graph::{
    compress, count_paths, density, merge_vertices, parser_steps, parser_steps_with,
    reduce_to_unique_label_sequences, topological_order, CountCap, Edge, ParserInit, VertexId,
    WordGraph,
};
use wordrank_core::Error;
use wordrank_testkit as kit;

fn graph_strategy(max_vertices: usize) -> impl Strategy<Value = WordGraph> {
    any::<u64>().prop_map(move |seed| {
        let spec = kit::DagSpec {
            max_vertices,
            ..Default::default()
        };
        kit::random_word_graph(&mut kit::rng(seed), &spec)
    })
}

fn no_duplicate_triples(g: &WordGraph) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    g.edges()
        .iter()
        .all(|e| seen.insert((e.src, e.label.clone(), e.tgt)))
}

proptest! {
    #[test]
    fn topological_order_respects_every_edge(g in graph_strategy(12)) {
        let t = topological_order(&g).unwrap();
        let mut sorted: Vec<usize> = t.order.iter().map(|v| v.0).collect();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..g.vertex_count()).collect::<Vec<_>>());
        for e in g.edges() {
            prop_assert!(t.rank(e.src) < t.rank(e.tgt));
        }
        prop_assert_eq!(t.order[0], g.start());
        prop_assert_eq!(*t.order.last().unwrap(), g.end());
        prop_assert_eq!(&t, g.topological_order());
    }

    #[test]
    fn path_count_matches_enumeration(g in graph_strategy(12)) {
        let brute = kit::paths_between(&g, g.start(), g.end()).len();
        prop_assert_eq!(count_paths(&g).unwrap(), BigUint::from(brute));
    }

    #[test]
    fn parser_steps_match_enumeration(g in graph_strategy(8)) {
        prop_assert_eq!(parser_steps(&g).unwrap(), BigUint::from(kit::brute_parser_steps(&g, false)));
        let start_only = parser_steps_with(&g, ParserInit::StartOnly, &CountCap::default()).unwrap();
        prop_assert_eq!(start_only, BigUint::from(kit::brute_parser_steps(&g, true)));
    }

    #[test]
    fn density_ignores_labels_and_weights(g in graph_strategy(10)) {
        let relabeled: Vec<Edge> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| Edge::new(e.src.0, e.tgt.0, format!("x{i}"), 0.5))
            .collect();
        let h = WordGraph::new(g.vertex_count(), g.start().0, g.end().0, relabeled).unwrap();
        prop_assert_eq!(density(&g), density(&h));
    }

    #[test]
    fn reduction_preserves_sequences_and_removes_duplicates(g in graph_strategy(10)) {
        let r = reduce_to_unique_label_sequences(&g).unwrap();
        r.validate().unwrap();
        let before = kit::label_sequence_set(&g);
        let after = kit::label_sequences(&r);
        let after_set: std::collections::BTreeSet<_> = after.iter().cloned().collect();
        prop_assert_eq!(&before, &after_set);
        prop_assert_eq!(after.len(), after_set.len());
        prop_assert_eq!(count_paths(&r).unwrap(), BigUint::from(before.len()));
        // a fixed point is left alone
        prop_assert_eq!(kit::label_sequences(&reduce_to_unique_label_sequences(&r).unwrap()), after);
    }

    #[test]
    fn compression_preserves_sequences(g in graph_strategy(10)) {
        let c = compress(&g).unwrap();
        c.validate().unwrap();
        let seqs = kit::label_sequences(&c);
        let set: std::collections::BTreeSet<_> = seqs.iter().cloned().collect();
        prop_assert_eq!(seqs.len(), set.len());
        prop_assert_eq!(set, kit::label_sequence_set(&g));
        prop_assert!(c.vertex_count() <= reduce_to_unique_label_sequences(&g).unwrap().vertex_count());
    }

    #[test]
    fn merge_is_valid_or_a_cycle_error(g in graph_strategy(10), a in 0usize..10, b in 0usize..10) {
        prop_assume!(a < g.vertex_count() && b < g.vertex_count() && a != b);
        let (v1, v2) = (VertexId(a), VertexId(b));
        match merge_vertices(&g, v1, v2) {
            Ok(m) => {
                m.validate().unwrap();
                prop_assert_eq!(m.vertex_count(), g.vertex_count() - 1);
                if no_duplicate_triples(&g) {
                    prop_assert!(no_duplicate_triples(&m));
                }
            }
            Err(e) => {
                prop_assert_eq!(e, Error::MergeCycle(a, b));
                prop_assert!(g.reaches(v1, v2) || g.reaches(v2, v1));
            }
        }
    }
}

#[test]
fn lattice_structure() {
    let g = kit::lattice_graph();
    assert_eq!(count_paths(&g).unwrap(), BigUint::from(3125u32));
    assert!((density(&g) - 25.0 / 6.0).abs() < 1e-9);
    assert_eq!(
        parser_steps(&g).unwrap(),
        BigUint::from(kit::brute_parser_steps(&g, false))
    );
}

#[test]
fn wide_graphs_hit_the_cap() {
    // 130 stages of two parallel edges: 2^130 paths
    let edges = (0..130)
        .flat_map(|s| [Edge::new(s, s + 1, "a", 1.0), Edge::new(s, s + 1, "b", 1.0)])
        .collect();
    let g = WordGraph::new(131, 0, 130, edges).unwrap();
    assert_eq!(count_paths(&g), Err(Error::CountOverflow));
    let big = CountCap::pow2(200);
    assert_eq!(
        wordrank_core::graph::count_paths_capped(&g, &big).unwrap(),
        BigUint::from(1u8) << 130
    );
}
