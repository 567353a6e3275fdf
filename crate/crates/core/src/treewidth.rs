//! Tree decompositions: validation, exact treewidth by subset dynamic programming
//! over elimination orderings, and the single-vertex join of two decompositions.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph accepted by [`treewidth_exact`].
pub const TREEWIDTH_LIMIT: usize = 25;

/// A tree whose nodes carry bags of host vertices. The host graph is supplied
/// separately when validating.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// Why a candidate tree decomposition was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    /// The bag tree itself is malformed, or a bag names a non-vertex.
    Structural(String),
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    /// The bags containing this vertex do not induce a connected subtree.
    DisconnectedTrace(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::Structural(msg) => write!(f, "structural: {msg}"),
            TdViolation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::UncoveredEdge(u, v) => write!(f, "edge ({u}, {v}) is in no bag"),
            TdViolation::DisconnectedTrace(v) => {
                write!(f, "bags containing vertex {v} are not connected in the tree")
            }
        }
    }
}

impl std::error::Error for TdViolation {}

impl TreeDecomposition {
    /// Largest bag size minus one (zero for a decomposition without vertices).
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Union of all bags.
    pub fn vertices(&self) -> VertexSet {
        VertexSet::new(self.bags.iter().flat_map(|b| b.iter()))
    }

    /// True when the tree is a path `0 - 1 - ... - k`, in any edge order.
    pub fn is_path(&self) -> bool {
        let k = self.bags.len();
        let mut deg = vec![0usize; k];
        for &(a, b) in &self.tree_edges {
            if a >= k || b >= k {
                return false;
            }
            deg[a] += 1;
            deg[b] += 1;
        }
        self.tree_edges.len() + 1 == k
            && tree_is_connected(k, &self.tree_edges)
            && deg.iter().all(|&d| d <= 2)
    }

    /// Checks the three tree-decomposition conditions against `host` and returns the width.
    pub fn validate(&self, host: &Graph) -> Result<usize, TdViolation> {
        let k = self.bags.len();
        let n = host.n();
        if k == 0 {
            return Err(TdViolation::Structural("tree has no nodes".into()));
        }
        for (i, bag) in self.bags.iter().enumerate() {
            if bag.check_range(n).is_err() {
                return Err(TdViolation::Structural(format!(
                    "bag {i} contains a vertex outside 0..{n}"
                )));
            }
        }
        for &(a, b) in &self.tree_edges {
            if a >= k || b >= k {
                return Err(TdViolation::Structural(format!(
                    "tree edge ({a}, {b}) references a missing bag"
                )));
            }
            if a == b {
                return Err(TdViolation::Structural(format!("tree self-loop at {a}")));
            }
        }
        if self.tree_edges.len() + 1 != k || !tree_is_connected(k, &self.tree_edges) {
            return Err(TdViolation::Structural(format!(
                "{} edges on {k} nodes do not form a tree",
                self.tree_edges.len()
            )));
        }

        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for v in bag.iter() {
                holders[v].push(i);
            }
        }
        if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
            return Err(TdViolation::UncoveredVertex(v));
        }
        for (u, v) in host.edges() {
            if !holders[u].iter().any(|&i| self.bags[i].contains(v)) {
                return Err(TdViolation::UncoveredEdge(u, v));
            }
        }
        for (v, nodes) in holders.iter().enumerate() {
            let edges: Vec<(usize, usize)> = self
                .tree_edges
                .iter()
                .filter(|&&(a, b)| self.bags[a].contains(v) && self.bags[b].contains(v))
                .map(|&(a, b)| {
                    let ia = nodes.binary_search(&a).unwrap();
                    let ib = nodes.binary_search(&b).unwrap();
                    (ia, ib)
                })
                .collect();
            if !tree_is_connected(nodes.len(), &edges) {
                return Err(TdViolation::DisconnectedTrace(v));
            }
        }
        Ok(self.width())
    }

    /// PACE `.td` text: `s td <bags> <width+1> <n>`, then `b i v..` lines, then tree
    /// edges, all 1-based.
    pub fn to_pace(&self, n: usize) -> String {
        let mut out = format!("s td {} {} {}\n", self.bags.len(), self.width() + 1, n);
        for (i, bag) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", i + 1));
            for v in bag.iter() {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        for &(a, b) in &self.tree_edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    /// Parses PACE `.td` text, returning the decomposition and the declared vertex count.
    pub fn from_pace(text: &str) -> Result<(TreeDecomposition, usize)> {
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<VertexSet>> = Vec::new();
        let mut tree_edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('c') {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let toks: Vec<&str> = l.split_whitespace().collect();
            let num = |t: &str| -> Result<usize> {
                t.parse()
                    .map_err(|_| err(format!("`{t}` is not a non-negative integer")))
            };
            match toks[0] {
                "s" => {
                    if toks.len() != 5 || toks[1] != "td" {
                        return Err(err("expected `s td <bags> <max bag> <n>`".into()));
                    }
                    let k = num(toks[2])?;
                    header = Some((k, num(toks[4])?));
                    bags = vec![None; k];
                }
                "b" => {
                    let (k, n) = header.ok_or_else(|| err("bag before header".into()))?;
                    let i = num(toks.get(1).ok_or_else(|| err("missing bag id".into()))?)?;
                    if i == 0 || i > k {
                        return Err(err(format!("bag id {i} outside 1..={k}")));
                    }
                    let mut members = Vec::new();
                    for t in &toks[2..] {
                        let v = num(t)?;
                        if v == 0 || v > n {
                            return Err(err(format!("vertex {v} outside 1..={n}")));
                        }
                        members.push(v - 1);
                    }
                    if bags[i - 1].replace(VertexSet::new(members)).is_some() {
                        return Err(err(format!("bag {i} declared twice")));
                    }
                }
                _ => {
                    let (k, _) = header.ok_or_else(|| err("edge before header".into()))?;
                    if toks.len() != 2 {
                        return Err(err("expected a tree edge `i j`".into()));
                    }
                    let (a, b) = (num(toks[0])?, num(toks[1])?);
                    if a == 0 || b == 0 || a > k || b > k {
                        return Err(err(format!("tree edge ({a}, {b}) outside 1..={k}")));
                    }
                    tree_edges.push((a - 1, b - 1));
                }
            }
        }
        let (_, n) = header.ok_or(Error::Parse {
            line: 1,
            message: "missing `s td` header".into(),
        })?;
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or(Error::Parse {
                    line: 0,
                    message: format!("bag {} never declared", i + 1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((TreeDecomposition { bags, tree_edges }, n))
    }

    /// JSON form `{"bags": [[..]..], "tree_edges": [[i, j]..]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("decomposition serializes")
    }
}

fn tree_is_connected(k: usize, edges: &[(usize, usize)]) -> bool {
    if k == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut merged = 0;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            merged += 1;
        }
    }
    merged + 1 == k
}

/// Decomposition induced by eliminating vertices in `order`: the bag of the i-th
/// eliminated vertex holds it and its later neighbours in the fill-in graph, and
/// hangs below the bag of the earliest of those neighbours. Trees of different
/// components are chained through their root bags.
pub fn elimination_decomposition(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Precondition(
                "elimination order is not a permutation of the vertices".into(),
            ));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::Precondition(
            "elimination order is not a permutation of the vertices".into(),
        ));
    }
    let mut fill: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = fill[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                fill[x].insert(y);
                fill[y].insert(x);
            }
        }
        match later.iter().map(|&w| pos[w]).min() {
            Some(p) => tree_edges.push((i, p)),
            None => roots.push(i),
        }
        bags.push(VertexSet::new(later.into_iter().chain([v])));
    }
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    Ok(TreeDecomposition { bags, tree_edges })
}

/// Exact treewidth with a certifying decomposition.
///
/// Each component is solved by the subset recurrence
/// `TW(S) = min_{v in S} max(TW(S - v), Q(S - v, v))`, where `Q(S, v)` counts the
/// vertices outside `S + v` reachable from `v` through `S`. An optimal elimination
/// order is read back from the table and turned into a decomposition.
pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph {
            operation: "treewidth",
        });
    }
    if n > TREEWIDTH_LIMIT {
        return Err(Error::SizeLimit {
            operation: "treewidth",
            n,
            limit: TREEWIDTH_LIMIT,
        });
    }
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    for comp in g.connected_components() {
        let masks = g.induced_masks(comp.as_slice());
        let (w, local) = treewidth_masks(&masks);
        width = width.max(w);
        order.extend(local.into_iter().map(|i| comp.as_slice()[i]));
    }
    let td = elimination_decomposition(g, &order)?;
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Treewidth of the graph given by adjacency masks, with an optimal elimination order.
pub(crate) fn treewidth_masks(adj: &[u64]) -> (usize, Vec<usize>) {
    let n = adj.len();
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let full = bits::full(n);
    let q = |prev: u64, v: usize| -> u8 {
        let with = prev | (1u64 << v);
        let comp = bits::reach(adj, v, with);
        (bits::neighbourhood(adj, comp) & !with).count_ones() as u8
    };
    let mut table = vec![0u8; 1usize << n];
    for s in 1..=full {
        let mut best = u8::MAX;
        for v in bits::iter(s) {
            let prev = s & !(1u64 << v);
            let t = table[prev as usize];
            if t >= best {
                continue;
            }
            let cand = t.max(q(prev, v));
            if cand < best {
                best = cand;
            }
        }
        table[s as usize] = best;
    }
    let width = table[full as usize];
    let mut rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = table[s as usize];
        let v = bits::iter(s)
            .find(|&v| {
                let prev = s & !(1u64 << v);
                table[prev as usize].max(q(prev, v)) == target
            })
            .expect("table is consistent");
        rev.push(v);
        s &= !(1u64 << v);
    }
    rev.reverse();
    (width as usize, rev)
}

/// Joins decompositions of two graphs meeting in at most one vertex by adding one
/// tree edge between a bag of each that contains the shared vertex (or between the
/// first bags when nothing is shared).
///
/// The host of each decomposition is taken to be the union of its bags, in a shared
/// vertex namespace.
pub fn join_decompositions(
    td1: &TreeDecomposition,
    td2: &TreeDecomposition,
    shared: &VertexSet,
) -> Result<TreeDecomposition> {
    if td1.bags.is_empty() || td2.bags.is_empty() {
        return Err(Error::Precondition("cannot join an empty decomposition".into()));
    }
    if shared.len() > 1 {
        return Err(Error::Precondition(format!(
            "shared set {shared} has more than one vertex"
        )));
    }
    let overlap = td1.vertices().intersection(&td2.vertices());
    if overlap.len() >= 2 {
        return Err(Error::Precondition(format!(
            "decomposed graphs overlap in {} vertices {overlap}",
            overlap.len()
        )));
    }
    let (g1, g2) = match shared.min() {
        None => {
            if !overlap.is_empty() {
                return Err(Error::Precondition(format!(
                    "decomposed graphs share {overlap} but no shared vertex was given"
                )));
            }
            (0, 0)
        }
        Some(v) => {
            let find = |td: &TreeDecomposition, side: &str| {
                td.bags.iter().position(|b| b.contains(v)).ok_or_else(|| {
                    Error::Precondition(format!("shared vertex {v} is in no bag of the {side} decomposition"))
                })
            };
            let g1 = find(td1, "first")?;
            let g2 = find(td2, "second")?;
            (g1, g2)
        }
    };
    let off = td1.bags.len();
    let mut bags = td1.bags.clone();
    bags.extend(td2.bags.iter().cloned());
    let mut tree_edges = td1.tree_edges.clone();
    tree_edges.extend(td2.tree_edges.iter().map(|&(a, b)| (a + off, b + off)));
    tree_edges.push((g1, g2 + off));
    Ok(TreeDecomposition { bags, tree_edges })
}
