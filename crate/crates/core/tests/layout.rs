mod common;

use common::*;
use sepprof::layout::{cutwidth_exact, pathwidth_exact, sumcut_exact, vertex_separation_exact};
use sepprof::treewidth::treewidth_exact;
use sepprof::Graph;

#[test]
fn match_ordering_oracles() {
    for g in connected_graphs_up_to(6) {
        assert_eq!(cutwidth_exact(&g).unwrap().0, cutwidth_by_orderings(&g));
        assert_eq!(vertex_separation_exact(&g).unwrap().0, vertex_separation_by_orderings(&g));
    }
}

#[test]
fn chain_and_certificates() {
    for g in random_corpus(17, 150, 9) {
        let tw = treewidth_exact(&g).unwrap().0;
        let (pw, pd) = pathwidth_exact(&g).unwrap();
        let (cw, layout) = cutwidth_exact(&g).unwrap();
        assert!(tw <= pw && pw <= cw, "{}", g.to_json());
        assert_eq!(pd.validate(&g), Ok(pw));
        assert!(pd.is_path());
        assert_eq!(layout.evaluate(&g).unwrap(), cw);
        let (sc, l) = sumcut_exact(&g).unwrap();
        assert_eq!(l.evaluate(&g).unwrap(), sc);
    }
}

#[test]
fn complete_graph_cutwidth() {
    for n in 1..=9 {
        assert_eq!(cutwidth_exact(&Graph::complete(n)).unwrap().0, (n / 2) * n.div_ceil(2));
    }
}

#[test]
fn binary_tree_pathwidth() {
    let t = Graph::complete_binary_tree(3);
    let pw = pathwidth_exact(&t).unwrap().0;
    assert!(vertex_separation_at_most(&t, pw));
    assert!(!vertex_separation_at_most(&t, pw - 1));
}
