//! Brute-force oracles and graph corpora shared by the integration tests.
//!
//! Nothing here calls the solvers under test. Graphs are handled as plain
//! adjacency matrices so the oracles stay independent of the library's bitmask code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepprof::Graph;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &Graph) -> Matrix {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn components(a: &Matrix, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for v in 0..n {
                if a[u][v] && alive[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn is_connected_subset(a: &Matrix, set: &[usize]) -> bool {
    let mut alive = vec![false; a.len()];
    for &v in set {
        alive[v] = true;
    }
    components(a, &alive).len() == 1
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

fn induced(a: &Matrix, set: &[usize]) -> Matrix {
    set.iter()
        .map(|&u| set.iter().map(|&v| a[u][v]).collect())
        .collect()
}

/// Width of the elimination order: eliminate vertices in turn, joining the
/// remaining neighbours into a clique.
pub fn elimination_width(a: &Matrix, order: &[usize]) -> usize {
    let mut a = a.clone();
    let n = a.len();
    let mut gone = vec![false; n];
    let mut width = 0;
    for &v in order {
        let nbrs: Vec<usize> = (0..n).filter(|&w| !gone[w] && a[v][w]).collect();
        width = width.max(nbrs.len());
        for &x in &nbrs {
            for &y in &nbrs {
                if x != y {
                    a[x][y] = true;
                }
            }
        }
        gone[v] = true;
    }
    width
}

/// Treewidth as the minimum elimination width over all orders.
pub fn treewidth_by_orderings(g: &Graph) -> usize {
    let a = matrix(g);
    let mut best = usize::MAX;
    for_each_permutation(g.n(), |p| best = best.min(elimination_width(&a, p)));
    best
}

fn order_costs(a: &Matrix, order: &[usize]) -> (usize, usize) {
    // (max edges leaving a prefix, max prefix vertices with a neighbour outside)
    let n = a.len();
    let mut inside = vec![false; n];
    let (mut cw, mut vs) = (0, 0);
    for &v in order {
        inside[v] = true;
        let mut edges = 0;
        let mut boundary = 0;
        for u in (0..n).filter(|&u| inside[u]) {
            let out = (0..n).filter(|&w| !inside[w] && a[u][w]).count();
            edges += out;
            boundary += usize::from(out > 0);
        }
        cw = cw.max(edges);
        vs = vs.max(boundary);
    }
    (cw, vs)
}

pub fn cutwidth_by_orderings(g: &Graph) -> usize {
    let a = matrix(g);
    let mut best = usize::MAX;
    for_each_permutation(g.n(), |p| best = best.min(order_costs(&a, p).0));
    best
}

pub fn vertex_separation_by_orderings(g: &Graph) -> usize {
    let a = matrix(g);
    let mut best = usize::MAX;
    for_each_permutation(g.n(), |p| best = best.min(order_costs(&a, p).1));
    best
}

/// Whether some order has vertex separation at most `k`, by depth-first search
/// over prefixes that never exceed `k`. Prefix sets already explored are skipped.
pub fn vertex_separation_at_most(g: &Graph, k: usize) -> bool {
    let a = matrix(g);
    let n = g.n();
    let boundary = |inside: &[bool]| {
        (0..n)
            .filter(|&u| inside[u] && (0..n).any(|w| !inside[w] && a[u][w]))
            .count()
    };
    let mut dead: HashSet<Vec<bool>> = HashSet::new();
    fn go(
        inside: &mut Vec<bool>,
        placed: usize,
        k: usize,
        boundary: &dyn Fn(&[bool]) -> usize,
        dead: &mut HashSet<Vec<bool>>,
    ) -> bool {
        if placed == inside.len() {
            return true;
        }
        if dead.contains(inside) {
            return false;
        }
        for v in 0..inside.len() {
            if inside[v] {
                continue;
            }
            inside[v] = true;
            let ok = boundary(inside) <= k && go(inside, placed + 1, k, boundary, dead);
            inside[v] = false;
            if ok {
                return true;
            }
        }
        dead.insert(inside.clone());
        false
    }
    go(&mut vec![false; n], 0, k, &boundary, &mut dead)
}

pub fn is_half_cut(a: &Matrix, removed: &[usize]) -> bool {
    let n = a.len();
    let mut alive = vec![true; n];
    for &v in removed {
        alive[v] = false;
    }
    components(a, &alive).iter().all(|c| 2 * c.len() <= n)
}

/// Smallest set whose removal leaves components of at most half the vertices.
pub fn cutsize_brute(g: &Graph) -> usize {
    let a = matrix(g);
    subsets(g.n())
        .filter(|s| is_half_cut(&a, s))
        .map(|s| s.len())
        .min()
        .unwrap()
}

/// Minimum `|A ∩ B|` over all covers `A ∪ B = V` with no edge between the private
/// parts and each private part of size at most `2n/3`. Tries all `3^n` assignments.
pub fn balanced_separator_brute_matrix(a: &Matrix) -> usize {
    let n = a.len();
    let mut side = vec![0u8; n]; // 0: A only, 1: B only, 2: both
    let mut best = usize::MAX;
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for s in side.iter_mut() {
            *s = (c % 3) as u8;
            c /= 3;
        }
        let count = |t: u8| side.iter().filter(|&&s| s == t).count();
        if 3 * count(0) > 2 * n || 3 * count(1) > 2 * n {
            continue;
        }
        let crossing = (0..n).any(|u| (0..n).any(|v| a[u][v] && side[u] == 0 && side[v] == 1));
        if !crossing {
            best = best.min(count(2));
        }
    }
    best
}

pub fn balanced_separator_brute(g: &Graph) -> usize {
    balanced_separator_brute_matrix(&matrix(g))
}

/// Largest minimum balanced separator over all induced subgraphs.
pub fn separation_number_brute(g: &Graph) -> usize {
    let a = matrix(g);
    subsets(g.n())
        .filter(|s| !s.is_empty())
        .map(|s| balanced_separator_brute_matrix(&induced(&a, &s)))
        .max()
        .unwrap_or(0)
}

/// Connected vertex sets of size `1..=r`, by filtering the power set.
pub fn connected_sets_brute(g: &Graph, r: usize) -> BTreeSet<Vec<usize>> {
    let a = matrix(g);
    subsets(g.n())
        .filter(|s| !s.is_empty() && s.len() <= r && is_connected_subset(&a, s))
        .collect()
}

/// Profile of `value` over connected vertex sets, computed from the power set:
/// entry `k - 1` is the largest value on a set of at most `k` vertices.
pub fn profile_brute(g: &Graph, r: usize, value: impl Fn(&Graph) -> usize) -> Vec<usize> {
    let mut by_size = vec![0; r + 1];
    for s in connected_sets_brute(g, r) {
        let sub = induced_graph(g, &s);
        by_size[s.len()] = by_size[s.len()].max(value(&sub));
    }
    let mut out = Vec::with_capacity(r);
    let mut run = 0;
    for v in &by_size[1..] {
        run = run.max(*v);
        out.push(run);
    }
    out
}

pub fn induced_graph(g: &Graph, set: &[usize]) -> Graph {
    let a = matrix(g);
    let mut edges = Vec::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if a[set[i]][set[j]] {
                edges.push((i, j));
            }
        }
    }
    Graph::new(set.len(), edges).unwrap()
}

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Canonical upper-triangle bit string: the lexicographic minimum over all
/// relabelings that list vertices by non-decreasing degree.
fn canonical(a: &Matrix) -> Vec<bool> {
    let n = a.len();
    let deg: Vec<usize> = (0..n).map(|v| a[v].iter().filter(|&&x| x).count()).collect();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| deg[v]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &by_degree {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    fn expand(
        classes: &[Vec<usize>],
        a: &Matrix,
        order: &mut Vec<usize>,
        best: &mut Option<Vec<bool>>,
    ) {
        let Some((first, rest)) = classes.split_first() else {
            let n = order.len();
            let mut bits = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    bits.push(a[order[i]][order[j]]);
                }
            }
            if best.as_ref().is_none_or(|b| bits < *b) {
                *best = Some(bits);
            }
            return;
        };
        for_each_permutation(first.len(), |p| {
            let base = order.len();
            order.extend(p.iter().map(|&i| first[i]));
            expand(rest, a, order, best);
            order.truncate(base);
        });
    }
    expand(&classes, a, &mut order, &mut best);
    best.unwrap()
}

/// One representative of every isomorphism class of connected graphs on `n`
/// vertices. Each class arises from a class on `n - 1` vertices by adding a vertex
/// with a non-empty neighbourhood, since deleting a leaf of a spanning tree keeps
/// a graph connected.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut current = vec![Graph::empty(1)];
    for m in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &current {
            let base = matrix(g);
            for nbrs in 1u32..1 << (m - 1) {
                let mut a: Matrix = base
                    .iter()
                    .map(|row| row.iter().copied().chain([false]).collect())
                    .collect();
                a.push(vec![false; m]);
                for v in (0..m - 1).filter(|v| nbrs >> v & 1 == 1) {
                    a[v][m - 1] = true;
                    a[m - 1][v] = true;
                }
                let key = canonical(&a);
                if seen.insert(key.clone()) {
                    next.push(graph_from_bits(m, &key));
                }
            }
        }
        current = next;
    }
    current
}

/// Connected graphs on up to `n` vertices, one per isomorphism class.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

/// Erdős–Rényi graph with `n` vertices and edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random graph with exactly `m` edges.
pub fn random_graph_m(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Graph {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for i in 0..m {
        let j = rng.gen_range(i..all.len());
        all.swap(i, j);
    }
    all.truncate(m);
    Graph::new(n, all).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` random graphs with `1..=max_n` vertices and varying density.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_n);
            let p = r.gen_range(0.1..0.9);
            random_graph(&mut r, n, p)
        })
        .collect()
}

/// Templates used by random gluings.
pub fn gluing_templates() -> std::collections::BTreeMap<String, Graph> {
    [
        ("K2", Graph::complete(2)),
        ("C3", Graph::cycle(3)),
        ("C4", Graph::cycle(4)),
        ("K4", Graph::complete(4)),
        ("P4", Graph::path(4)),
    ]
    .into_iter()
    .map(|(k, g)| (k.to_string(), g))
    .collect()
}

/// A random tree of template copies whose composed host has at most `max_n`
/// vertices. Each new node is glued to a uniformly chosen earlier node.
pub fn random_gluing(r: &mut ChaCha8Rng, max_n: usize) -> sepprof::treegraded::GluingSpec {
    use sepprof::treegraded::{GluingEdge, GluingSpec, TreeNode};
    let templates = gluing_templates();
    let names: Vec<&String> = templates.keys().collect();
    let pick = |r: &mut ChaCha8Rng| names[r.gen_range(0..names.len())].clone();
    let first = pick(r);
    let mut n = templates[&first].n();
    let mut nodes = vec![TreeNode { template: first }];
    let mut edges = Vec::new();
    loop {
        let name = pick(r);
        let size = templates[&name].n();
        if n + size - 1 > max_n || r.gen_bool(0.15) {
            break;
        }
        let parent = r.gen_range(0..nodes.len());
        let parent_size = templates[&nodes[parent].template].n();
        edges.push(GluingEdge {
            parent,
            child: nodes.len(),
            parent_vertex: r.gen_range(0..parent_size),
            child_vertex: r.gen_range(0..size),
        });
        nodes.push(TreeNode { template: name });
        n += size - 1;
    }
    GluingSpec {
        tree_nodes: nodes,
        tree_edges: edges,
    }
}
