use hyperswitch::combinatorics::combinations;
use hyperswitch::echar::GroebnerLimits;
use hyperswitch::hypergraph::{find_forbidden_pattern, is_complete, Hypergraph};
use hyperswitch::regularity::{decide_regularity, decide_regularity_algebraic, verify_witness};

fn all_graphs(n: usize, k: usize) -> impl Iterator<Item = Hypergraph> {
    let slots: Vec<Vec<usize>> = combinations(n, k).collect();
    (0u64..1 << slots.len()).map(move |mask| {
        let edges: Vec<Vec<usize>> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect();
        Hypergraph::with_numbered_vertices(n, k, edges).unwrap()
    })
}

#[test]
fn graphs_agree_with_the_equations() {
    let lim = GroebnerLimits::default();
    for n in 1..=5 {
        for g in all_graphs(n, 2) {
            let v = decide_regularity(&g).unwrap();
            assert_eq!(v.regular, decide_regularity_algebraic(&g, &lim).unwrap(), "{g:?}");
            if !v.regular {
                let w = v.witness.expect("graphs always get a witness");
                assert!(verify_witness(&g, &w.x).unwrap());
            }
        }
    }
}

#[test]
fn graph_witnesses_on_six_vertices() {
    for g in all_graphs(6, 2) {
        let v = decide_regularity(&g).unwrap();
        if let Some(w) = v.witness {
            assert!(!v.regular);
            assert!(verify_witness(&g, &w.x).unwrap(), "{g:?}");
        } else {
            assert!(v.regular, "{g:?}");
        }
    }
}

#[test]
fn pattern_free_means_complete_on_small_vertex_sets() {
    for n in 3..=5 {
        for g in all_graphs(n, 3) {
            let connected_pattern_free = find_forbidden_pattern(&g).unwrap().is_none();
            if connected_pattern_free && hyperswitch::hypergraph::components(&g).len() == 1 {
                assert!(is_complete(&g), "{g:?}");
            }
        }
    }
}

#[test]
fn every_reported_witness_verifies() {
    for n in 1..=5 {
        for g in all_graphs(n, 3) {
            if let Some(w) = decide_regularity(&g).unwrap().witness {
                assert!(verify_witness(&g, &w.x).unwrap(), "{g:?}");
            }
        }
    }
}

#[test]
fn separated_edges_are_regular_against_the_component_rule() {
    let g = Hypergraph::with_numbered_vertices(5, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4], vec![2, 3, 4]]).unwrap();
    assert!(decide_regularity_algebraic(&g, &GroebnerLimits::default()).unwrap());
    assert!(!decide_regularity(&g).unwrap().regular);
}
