use bisimqi::artin::{artin_to_decomposition, classify_artin, ArtinTree, QiClass};
use bisimqi::census::list_minimal;
use bisimqi::format::{parse_any, write_graph, write_graph_json};
use bisimqi::graph::{are_isomorphic, canonical_form};
use bisimqi::refine::is_weak_covering;
use bisimqi::unfold::{unfolding, unfolding_key};
use bisimqi::{bisimilar, is_minimal, minimize, BicoloredGraph, Color};

#[test]
fn census_representatives_survive_both_encodings() {
    for b in 0..=4 {
        for g in list_minimal(4, b).unwrap() {
            assert_eq!(parse_any(&write_graph(&g)).unwrap(), g);
            assert_eq!(parse_any(&write_graph_json(&g)).unwrap(), g);
        }
    }
}

#[test]
fn distinct_representatives_are_not_bisimilar() {
    let reps: Vec<BicoloredGraph> = (0..=3).flat_map(|b| list_minimal(3, b).unwrap()).collect();
    for (i, g) in reps.iter().enumerate() {
        for (j, h) in reps.iter().enumerate() {
            assert_eq!(bisimilar(g, h).unwrap().is_some(), i == j);
        }
    }
}

#[test]
fn doubled_cycle_collapses_to_its_quotient() {
    // alternating 6-cycle with one doubled edge
    let colors: Vec<Color> = (0..6)
        .map(|v| if v % 2 == 0 { Color::Black } else { Color::White })
        .collect();
    let mut g = BicoloredGraph::from_edges(colors, (0..6).map(|v| (v, (v + 1) % 6))).unwrap();
    g.add_edge(0, 1).unwrap();
    assert!(!is_minimal(&g).unwrap());
    let m = minimize(&g).unwrap();
    assert_eq!(m.graph.vertex_count(), 2);
    assert!(is_weak_covering(&g, &m.graph, &m.coloring.as_vertex_map()));
    for v in 0..6 {
        let mv = m.coloring.class_of(v);
        assert_eq!(
            unfolding_key(&unfolding(&g, v, 7)),
            unfolding_key(&unfolding(&m.graph, mv, 7))
        );
    }
}

#[test]
fn artin_class_matches_conversion() {
    let t = ArtinTree::path(&[2, 4, 3]).unwrap();
    let QiClass::GraphManifold(min) = classify_artin(&t) else {
        panic!("path 2-4-3 is big");
    };
    let direct = minimize(&artin_to_decomposition(&t).unwrap()).unwrap().graph;
    assert!(are_isomorphic(&min, &direct).unwrap().is_some());
    assert_eq!(canonical_form(&min).unwrap(), min);
}
