mod common;

use common::*;
use sepprof::separation::{
    balanced_separator_min, balanced_separator_min_with, cutset_to_balanced_separator, cutsize_exact,
    is_half_cutset, separation_number, BalancedSeparator, Completion,
};
use sepprof::{Graph, VertexSet};

#[test]
fn matches_oracles_on_small_classes() {
    for g in connected_graphs_up_to(6) {
        let c = cutsize_exact(&g).unwrap();
        assert_eq!(c.value, cutsize_brute(&g));
        assert_eq!(c.set.len(), c.value);
        assert!(is_half_cutset(&g, &c.set));
        let (b, sep) = balanced_separator_min(&g).unwrap();
        assert_eq!(b, balanced_separator_brute(&g), "{}", g.to_json());
        assert_eq!(sep.size(), b);
        assert_eq!(sep.validate(&g, Completion::Required), Ok(()));
    }
}

#[test]
fn separation_number_matches_oracle() {
    for g in connected_graphs_up_to(5) {
        assert_eq!(separation_number(&g).unwrap().0, separation_number_brute(&g));
    }
    let mut r = rng(3);
    for _ in 0..20 {
        let g = random_graph(&mut r, 7, 0.4);
        let (sn, witness) = separation_number(&g).unwrap();
        assert_eq!(sn, separation_number_brute(&g));
        let (sub, _) = g.induced_subgraph(&witness).unwrap();
        assert_eq!(balanced_separator_min(&sub).unwrap().0, sn);
    }
}

#[test]
fn complete_graphs() {
    for n in 1..=9 {
        assert_eq!(cutsize_exact(&Graph::complete(n)).unwrap().value, n.div_ceil(2));
        assert_eq!(balanced_separator_min(&Graph::complete(n)).unwrap().0, n.div_ceil(3));
    }
}

#[test]
fn relaxed_completion_is_trivial() {
    let g = Graph::complete(6);
    let (size, sep) = balanced_separator_min_with(&g, Completion::Relaxed).unwrap();
    assert_eq!(size, 0);
    assert_eq!(sep.validate(&g, Completion::Relaxed), Ok(()));
    assert!(sep.validate(&g, Completion::Required).is_err());
}

#[test]
fn conversion_on_every_minimum_cutset() {
    for g in connected_graphs_up_to(6) {
        let c = cutsize_exact(&g).unwrap();
        let conv = cutset_to_balanced_separator(&g, &c.set).unwrap();
        assert_eq!(conv.separator.size(), c.value);
        assert_eq!(conv.separator.validate(&g, Completion::Required), Ok(()));
    }
}

#[test]
fn conversion_rejects_non_cutsets() {
    assert!(cutset_to_balanced_separator(&Graph::path(5), &VertexSet::singleton(0)).is_err());
}

#[test]
fn separator_json() {
    let (_, sep) = balanced_separator_min(&Graph::path(5)).unwrap();
    let text = serde_json::to_string(&sep).unwrap();
    assert_eq!(text, r#"{"A":[1,2,3,4],"B":[0,1],"size":1}"#);
    let back: BalancedSeparator = serde_json::from_str(&text).unwrap();
    assert_eq!(back, sep);
    assert!(serde_json::from_str::<BalancedSeparator>(r#"{"A":[0],"B":[0],"size":0}"#).is_err());
}
