//! Exact linear layout parameters: cutwidth, pathwidth (as vertex separation
//! number, certified by a path decomposition) and sumcut.
//!
//! For a vertex order with prefixes `S_1, .., S_n`:
//! * cutwidth is the largest number of edges leaving a prefix;
//! * vertex separation is the largest number of prefix vertices with a neighbour
//!   outside the prefix, and its minimum over orders equals pathwidth;
//! * sumcut is the sum over prefixes of that same vertex boundary.
//!
//! Cutwidth and pathwidth are the standard definitions. The sumcut variant used
//! here (summed vertex boundary) is flagged in reports through
//! [`LayoutParameter::definition`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::treewidth::TreeDecomposition;

pub const LAYOUT_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutParameter {
    Cutwidth,
    Pathwidth,
    Sumcut,
}

impl LayoutParameter {
    pub const ALL: [LayoutParameter; 3] = [
        LayoutParameter::Cutwidth,
        LayoutParameter::Pathwidth,
        LayoutParameter::Sumcut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LayoutParameter::Cutwidth => "cutwidth",
            LayoutParameter::Pathwidth => "pathwidth",
            LayoutParameter::Sumcut => "sumcut",
        }
    }

    /// Human-readable statement of the definition in use.
    pub fn definition(self) -> &'static str {
        match self {
            LayoutParameter::Cutwidth => "min over orders of max edges leaving a prefix",
            LayoutParameter::Pathwidth => {
                "min over orders of max prefix vertices with a neighbour outside (vertex separation)"
            }
            LayoutParameter::Sumcut => {
                "min over orders of the summed count of prefix vertices with a neighbour outside"
            }
        }
    }
}

impl fmt::Display for LayoutParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LayoutParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cutwidth" | "cw" => Ok(LayoutParameter::Cutwidth),
            "pathwidth" | "pw" => Ok(LayoutParameter::Pathwidth),
            "sumcut" => Ok(LayoutParameter::Sumcut),
            other => Err(Error::Precondition(format!("unknown layout parameter `{other}`"))),
        }
    }
}

/// A vertex order with the parameter value it attains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearLayout {
    pub order: Vec<usize>,
    pub value: usize,
    pub parameter: LayoutParameter,
}

impl LinearLayout {
    /// Recomputes the parameter on `host` for this order, checking it is a permutation.
    pub fn evaluate(&self, host: &Graph) -> Result<usize> {
        layout_cost(host, &self.order, self.parameter)
    }
}

/// Value of `parameter` for the given vertex order.
pub fn layout_cost(g: &Graph, order: &[usize], parameter: LayoutParameter) -> Result<usize> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Precondition("layout is not a permutation".into()));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::Precondition("layout is not a permutation".into()));
    }
    let mut worst = 0;
    let mut total = 0;
    for i in 0..n {
        // prefix is order[..=i]
        let (edges, vertices) = order[..=i].iter().fold((0, 0), |(e, b), &u| {
            let out = g.neighbors(u).iter().filter(|&&w| pos[w] > i).count();
            (e + out, b + usize::from(out > 0))
        });
        let cost = match parameter {
            LayoutParameter::Cutwidth => edges,
            _ => vertices,
        };
        worst = worst.max(cost);
        total += cost;
    }
    Ok(match parameter {
        LayoutParameter::Sumcut => total,
        _ => worst,
    })
}

fn check(g: &Graph, operation: &'static str) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph { operation });
    }
    if g.n() > LAYOUT_LIMIT {
        return Err(Error::SizeLimit {
            operation,
            n: g.n(),
            limit: LAYOUT_LIMIT,
        });
    }
    Ok(())
}

/// Dynamic program over prefix sets: `f(S) = combine(cost(S), min_{v in S} f(S - v))`.
/// Returns the optimum and an order attaining it.
pub(crate) fn layout_masks(adj: &[u64], parameter: LayoutParameter) -> (usize, Vec<usize>) {
    let n = adj.len();
    let full = bits::full(n);
    let cost = |s: u64| -> u32 {
        match parameter {
            LayoutParameter::Cutwidth => bits::iter(s).map(|v| (adj[v] & !s).count_ones()).sum(),
            _ => bits::iter(s).filter(|&v| adj[v] & !s != 0).count() as u32,
        }
    };
    let combine = |c: u32, prev: u32| match parameter {
        LayoutParameter::Sumcut => c + prev,
        _ => c.max(prev),
    };
    let mut table = vec![0u32; 1usize << n];
    for s in 1..=full {
        let best = bits::iter(s)
            .map(|v| table[(s & !(1u64 << v)) as usize])
            .min()
            .expect("non-empty");
        table[s as usize] = combine(cost(s), best);
    }
    let mut rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let best = bits::iter(s)
            .min_by_key(|&v| table[(s & !(1u64 << v)) as usize])
            .expect("non-empty");
        rev.push(best);
        s &= !(1u64 << best);
    }
    rev.reverse();
    (table[full as usize] as usize, rev)
}

fn solve(g: &Graph, parameter: LayoutParameter) -> Result<LinearLayout> {
    check(g, parameter.name())?;
    let (value, order) = layout_masks(&g.masks(), parameter);
    Ok(LinearLayout {
        order,
        value,
        parameter,
    })
}

pub fn cutwidth_exact(g: &Graph) -> Result<(usize, LinearLayout)> {
    let l = solve(g, LayoutParameter::Cutwidth)?;
    Ok((l.value, l))
}

pub fn sumcut_exact(g: &Graph) -> Result<(usize, LinearLayout)> {
    let l = solve(g, LayoutParameter::Sumcut)?;
    Ok((l.value, l))
}

/// Minimum vertex separation number, with an optimal order.
pub fn vertex_separation_exact(g: &Graph) -> Result<(usize, LinearLayout)> {
    let l = solve(g, LayoutParameter::Pathwidth)?;
    Ok((l.value, l))
}

/// Exact pathwidth, certified by a path decomposition whose width equals the value.
pub fn pathwidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let (value, layout) = vertex_separation_exact(g)?;
    let pd = path_decomposition(g, &layout.order)?;
    debug_assert_eq!(pd.width(), value);
    Ok((value, pd))
}

/// Path decomposition from a vertex order: bag `i` holds the `i`-th vertex and every
/// earlier vertex that still has a neighbour at position `i` or later.
pub fn path_decomposition(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    layout_cost(g, order, LayoutParameter::Pathwidth)?;
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // last position of a neighbour, or the vertex's own position
    let reach: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&w| pos[w])
                .chain([pos[v]])
                .max()
                .unwrap()
        })
        .collect();
    let bags = (0..n)
        .map(|i| {
            VertexSet::new(
                order[..i]
                    .iter()
                    .copied()
                    .filter(|&u| reach[u] >= i)
                    .chain([order[i]]),
            )
        })
        .collect();
    let tree_edges = (1..n).map(|i| (i - 1, i)).collect();
    Ok(TreeDecomposition { bags, tree_edges })
}
