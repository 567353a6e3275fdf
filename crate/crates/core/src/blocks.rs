//! Block decomposition (biconnected components) and bounded simple-cycle enumeration.

use crate::graph::{Graph, VertexSet};

/// Blocks of a graph: maximal 2-connected subgraphs and bridges.
///
/// Isolated vertices belong to no block. Every edge lies in exactly one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, sorted.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
}

const UNSEEN: usize = usize::MAX;

struct Frame {
    v: usize,
    parent: usize,
    next: usize,
}

pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        let mut stack = vec![Frame {
            v: root,
            parent: UNSEEN,
            next: 0,
        }];
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if let Some(&w) = g.neighbors(v).get(frame.next) {
                frame.next += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push(Frame {
                        v: w,
                        parent: v,
                        next: 0,
                    });
                } else if w != frame.parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            let parent = frame.parent;
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let mut members = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    members.push(a);
                    members.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                blocks.push(VertexSet::new(members));
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    blocks.sort();
    BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    }
}

/// Result of a bounded cycle enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEnumeration {
    /// Each cycle starts at its smallest vertex and is oriented so that the second
    /// vertex is smaller than the last.
    pub cycles: Vec<Vec<usize>>,
    /// Set when enumeration stopped at the limit.
    pub truncated: bool,
}

/// Enumerates simple cycles (length at least 3), each once up to rotation and
/// reflection, stopping after `limit` cycles.
pub fn simple_cycles(g: &Graph, limit: usize) -> CycleEnumeration {
    let n = g.n();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        let mut path = vec![start];
        let mut next = vec![0usize];
        on_path[start] = true;
        while let Some(&v) = path.last() {
            let i = *next.last().unwrap();
            let Some(&w) = g.neighbors(v).get(i) else {
                on_path[v] = false;
                path.pop();
                next.pop();
                continue;
            };
            *next.last_mut().unwrap() += 1;
            if w == start {
                if path.len() >= 3 && path[1] < v {
                    if cycles.len() == limit {
                        return CycleEnumeration {
                            cycles,
                            truncated: true,
                        };
                    }
                    cycles.push(path.clone());
                }
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                next.push(0);
            }
        }
    }
    CycleEnumeration {
        cycles,
        truncated: false,
    }
}
