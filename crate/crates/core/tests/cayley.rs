use std::collections::HashSet;

use sepprof::blocks::blocks;
use sepprof::cayley::{
    cayley_ball, free_product_ball, Factor, FreeProduct, GroupSpec, NormalFormWord, Syllable,
};
use sepprof::VertexSet;

/// Product in one factor, read straight from the spec.
fn factor_mul(spec: &GroupSpec, a: i64, b: i64) -> i64 {
    match spec {
        GroupSpec::FiniteTable { table, .. } => table[a as usize][b as usize] as i64,
        GroupSpec::CyclicInfinite => a + b,
    }
}

fn factor_identity(spec: &GroupSpec) -> i64 {
    match spec {
        GroupSpec::FiniteTable { table, .. } => {
            (0..table.len()).find(|&e| table[e][e] == e).unwrap() as i64
        }
        GroupSpec::CyclicInfinite => 0,
    }
}

/// Rewrites a letter sequence until no identity letter and no two adjacent
/// letters from the same factor remain.
fn rewrite(g: &GroupSpec, h: &GroupSpec, letters: &[Syllable]) -> Vec<Syllable> {
    let spec = |f: Factor| if f == Factor::G { g } else { h };
    let mut w = letters.to_vec();
    loop {
        let before = w.len();
        w.retain(|s| s.element != factor_identity(spec(s.factor)));
        if let Some(i) = (1..w.len()).find(|&i| w[i - 1].factor == w[i].factor) {
            let merged = factor_mul(spec(w[i].factor), w[i - 1].element, w[i].element);
            w[i - 1].element = merged;
            w.remove(i);
            continue;
        }
        if w.len() == before {
            return w;
        }
    }
}

fn check_against_rewriting(g: &GroupSpec, h: &GroupSpec, max_len: usize) {
    let fp = FreeProduct::new(g, h).unwrap();
    let gens = fp.generators();
    let mut stack: Vec<(Vec<Syllable>, NormalFormWord)> = vec![(Vec::new(), NormalFormWord::identity())];
    let mut checked = 0;
    while let Some((letters, word)) = stack.pop() {
        assert_eq!(word.syllables, rewrite(g, h, &letters), "{letters:?}");
        checked += 1;
        if letters.len() < max_len {
            for &s in &gens {
                let mut next = letters.clone();
                next.push(s);
                stack.push((next, fp.mul(&word, s)));
            }
        }
    }
    assert!(checked > 1);
}

#[test]
fn normal_forms_match_rewriting() {
    let z2 = GroupSpec::cyclic(2, [1]);
    let z3 = GroupSpec::cyclic_all(3);
    let s3 = GroupSpec::permutation_group(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
    check_against_rewriting(&z2, &z3, 6);
    check_against_rewriting(&z3, &z3, 6);
    check_against_rewriting(&GroupSpec::CyclicInfinite, &GroupSpec::CyclicInfinite, 6);
    check_against_rewriting(&s3, &z2, 6);
}

#[test]
fn ball_words_are_distinct_normal_forms() {
    let z2 = GroupSpec::cyclic(2, [1]);
    let z3 = GroupSpec::cyclic_all(3);
    for (g, h) in [(&z2, &z3), (&z3, &z3), (&z2, &z2)] {
        let ball = free_product_ball(g, h, 6).unwrap();
        let mut seen = HashSet::new();
        for w in &ball.words {
            assert!(seen.insert(w.clone()));
            assert!(w.syllables.windows(2).all(|p| p[0].factor != p[1].factor));
            assert!(w.syllables.iter().all(|s| s.element != 0));
        }
        assert_eq!(ball.grading.validate(), Ok(()));
        for b in blocks(ball.graph()).blocks {
            assert!(ball.grading.pieces.iter().any(|p| b.is_subset(p)));
        }
    }
}

#[test]
fn smaller_balls_are_induced_subgraphs() {
    let z2 = GroupSpec::cyclic(2, [1]);
    let z3 = GroupSpec::cyclic_all(3);
    let big = free_product_ball(&z2, &z3, 6).unwrap();
    for r in 0..6 {
        let small = free_product_ball(&z2, &z3, r).unwrap();
        let k = small.graph().n();
        assert_eq!(&big.words[..k], &small.words[..]);
        let (sub, _) = big.graph().induced_subgraph(&VertexSet::new(0..k)).unwrap();
        assert_eq!(&sub, small.graph());
    }
}

#[test]
fn radius_zero_ball() {
    let z3 = GroupSpec::cyclic_all(3);
    let ball = free_product_ball(&z3, &z3, 0).unwrap();
    assert_eq!(ball.graph().n(), 1);
    assert_eq!(ball.grading.validate(), Ok(()));
}

#[test]
fn full_cayley_graphs() {
    let z5 = GroupSpec::cyclic(5, [1, 4]);
    let c5 = cayley_ball(&z5, 2).unwrap();
    assert_eq!((c5.n(), c5.m(), c5.max_degree()), (5, 5, 2));
    assert_eq!(cayley_ball(&z5, 1).unwrap().n(), 3);
    let s3 = GroupSpec::permutation_group(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
    assert_eq!(cayley_ball(&s3, 3).unwrap().n(), 6);
    assert_eq!(cayley_ball(&s3, 2).unwrap().n(), 5);
}
