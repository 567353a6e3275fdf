//! Enumeration of bounded-size vertex subsets: connected induced subgraphs (the
//! default witnesses for profiles) and arbitrary induced subgraphs.

use std::ops::ControlFlow;

use crate::graph::{Graph, VertexSet};

/// Which vertex subsets a profile ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubgraphMode {
    /// Connected induced subgraphs only.
    #[default]
    Connected,
    /// Every nonempty induced subgraph.
    AllInduced,
}

impl std::str::FromStr for SubgraphMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "connected" => Ok(SubgraphMode::Connected),
            "all-induced" => Ok(SubgraphMode::AllInduced),
            other => Err(crate::Error::Precondition(format!(
                "unknown subgraph mode `{other}`"
            ))),
        }
    }
}

/// Visits every vertex set of size `1..=r` whose induced subgraph is connected,
/// exactly once, in a deterministic order. The slice passed to `visit` is sorted.
///
/// Uses the ESU extension scheme: each set is grown from its smallest vertex, and a
/// vertex only enters the extension list while it is in the exclusive neighbourhood
/// of the vertex that discovered it.
pub fn for_each_connected_set<F>(g: &Graph, r: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if r == 0 {
        return ControlFlow::Continue(());
    }
    let mut esu = Esu {
        g,
        r,
        sub: Vec::with_capacity(r),
        closed: vec![0; g.n()],
        sorted: Vec::with_capacity(r),
    };
    for root in 0..g.n() {
        esu.push(root);
        let ext: Vec<usize> = g.neighbors(root).iter().copied().filter(|&u| u > root).collect();
        let flow = esu.extend(ext, root, &mut visit);
        esu.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

struct Esu<'a> {
    g: &'a Graph,
    r: usize,
    sub: Vec<usize>,
    /// For each vertex, how many members of `sub` it equals or is adjacent to.
    closed: Vec<u32>,
    sorted: Vec<usize>,
}

impl Esu<'_> {
    fn push(&mut self, v: usize) {
        self.sub.push(v);
        self.closed[v] += 1;
        for &w in self.g.neighbors(v) {
            self.closed[w] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.sub.pop().expect("non-empty");
        self.closed[v] -= 1;
        for &w in self.g.neighbors(v) {
            self.closed[w] -= 1;
        }
    }

    fn extend<F>(&mut self, mut ext: Vec<usize>, root: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.sorted.clear();
        self.sorted.extend_from_slice(&self.sub);
        self.sorted.sort_unstable();
        visit(&self.sorted)?;
        if self.sub.len() == self.r {
            return ControlFlow::Continue(());
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(
                self.g
                    .neighbors(w)
                    .iter()
                    .copied()
                    .filter(|&u| u > root && self.closed[u] == 0),
            );
            self.push(w);
            let flow = self.extend(next, root, visit);
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every nonempty vertex set of size at most `r`, by size and then
/// lexicographically.
pub fn for_each_induced_set<F>(g: &Graph, r: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    for k in 1..=r.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            visit(&idx)?;
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    ControlFlow::Continue(())
}

/// Dispatches on `mode`.
pub fn for_each_set<F>(g: &Graph, r: usize, mode: SubgraphMode, visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    match mode {
        SubgraphMode::Connected => for_each_connected_set(g, r, visit),
        SubgraphMode::AllInduced => for_each_induced_set(g, r, visit),
    }
}

/// All connected vertex sets of size at most `r`, in enumeration order.
pub fn connected_sets(g: &Graph, r: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let _ = for_each_connected_set(g, r, |s| {
        out.push(VertexSet::new(s.iter().copied()));
        ControlFlow::Continue(())
    });
    out
}
