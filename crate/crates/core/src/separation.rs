//! Cutsize, balanced separators, separation number, and the conversion from a
//! half-cutset to a balanced separator by ordering the leftover components.
//!
//! All balance thresholds are exact integer comparisons: a component `C` is small
//! enough for a half-cutset when `2|C| <= n`, and a private side `P` of a balanced
//! separator is small enough when `3|P| <= 2n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const CUTSIZE_LIMIT: usize = 24;
pub const BALANCED_SEPARATOR_LIMIT: usize = 24;
pub const SEPARATION_NUMBER_LIMIT: usize = 14;

/// A half-cutset witness, serialized as `{"S": [..], "value": k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cutset {
    #[serde(rename = "S")]
    pub set: VertexSet,
    pub value: usize,
}

/// True when every component of `g - s` has at most half of the vertices of `g`.
pub fn is_half_cutset(g: &Graph, s: &VertexSet) -> bool {
    s.check_range(g.n()).is_ok()
        && g
            .components_avoiding(s)
            .iter()
            .all(|c| 2 * c.len() <= g.n())
}

/// Minimum half-cutset. Candidates are tried by size and then lexicographically,
/// so the witness is the lexicographically first optimum.
pub fn cutsize_exact(g: &Graph) -> Result<Cutset> {
    let n = g.n();
    check_size("cutsize", n, CUTSIZE_LIMIT)?;
    let (value, mask) = cutsize_masks(&g.masks());
    Ok(Cutset {
        set: VertexSet::from_mask(mask),
        value,
    })
}

pub(crate) fn cutsize_masks(adj: &[u64]) -> (usize, u64) {
    let n = adj.len();
    let full = bits::full(n);
    for k in 0..=n {
        let mut hit = 0;
        let found = bits::for_each_k_subset(n, k, |s| {
            let ok = bits::components(adj, full & !s)
                .iter()
                .all(|c| 2 * c.count_ones() as usize <= n);
            if ok {
                hit = s;
            }
            ok
        });
        if found {
            return (k, hit);
        }
    }
    unreachable!("removing every vertex always succeeds")
}

/// Whether the separator must cover every vertex (`A ∪ B = V`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Completion {
    /// `A ∪ B = V` is enforced; this is the notion used throughout.
    #[default]
    Required,
    /// Diagnostic mode without the covering condition. Then `(∅, ∅)` is a separator
    /// of size zero of every graph.
    Relaxed,
}

/// A pair `(A, B)` of vertex sets of a host graph; its size is `|A ∩ B|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedSeparator {
    pub a: VertexSet,
    pub b: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct SeparatorJson {
    #[serde(rename = "A")]
    a: VertexSet,
    #[serde(rename = "B")]
    b: VertexSet,
    size: usize,
}

impl Serialize for BalancedSeparator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeparatorJson {
            a: self.a.clone(),
            b: self.b.clone(),
            size: self.size(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BalancedSeparator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeparatorJson::deserialize(d)?;
        let sep = BalancedSeparator { a: raw.a, b: raw.b };
        if sep.size() != raw.size {
            return Err(serde::de::Error::custom(format!(
                "declared size {} but |A ∩ B| = {}",
                raw.size,
                sep.size()
            )));
        }
        Ok(sep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatorViolation {
    OutOfRange(usize),
    /// Completion is required but this vertex is in neither side.
    Uncovered(usize),
    /// `|A \ B|` (side `'A'`) or `|B \ A|` (side `'B'`) exceeds two thirds of the graph.
    Unbalanced { side: char, private: usize, n: usize },
    CrossingEdge(usize, usize),
}

impl fmt::Display for SeparatorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatorViolation::OutOfRange(v) => write!(f, "vertex {v} is not in the host"),
            SeparatorViolation::Uncovered(v) => write!(f, "vertex {v} is in neither A nor B"),
            SeparatorViolation::Unbalanced { side, private, n } => write!(
                f,
                "private part of {side} has {private} vertices, more than 2/3 of {n}"
            ),
            SeparatorViolation::CrossingEdge(u, v) => {
                write!(f, "edge ({u}, {v}) joins A \\ B to B \\ A")
            }
        }
    }
}

impl std::error::Error for SeparatorViolation {}

impl BalancedSeparator {
    pub fn size(&self) -> usize {
        self.a.intersection(&self.b).len()
    }

    pub fn validate(&self, host: &Graph, completion: Completion) -> Result<(), SeparatorViolation> {
        let n = host.n();
        for set in [&self.a, &self.b] {
            if let Some(v) = set.iter().find(|&v| v >= n) {
                return Err(SeparatorViolation::OutOfRange(v));
            }
        }
        if completion == Completion::Required {
            if let Some(v) = (0..n).find(|&v| !self.a.contains(v) && !self.b.contains(v)) {
                return Err(SeparatorViolation::Uncovered(v));
            }
        }
        let only_a = self.a.difference(&self.b);
        let only_b = self.b.difference(&self.a);
        for (side, private) in [('A', &only_a), ('B', &only_b)] {
            if 3 * private.len() > 2 * n {
                return Err(SeparatorViolation::Unbalanced {
                    side,
                    private: private.len(),
                    n,
                });
            }
        }
        for u in only_a.iter() {
            if let Some(&v) = host.neighbors(u).iter().find(|&&v| only_b.contains(v)) {
                return Err(SeparatorViolation::CrossingEdge(u.min(v), u.max(v)));
            }
        }
        Ok(())
    }
}

/// Minimum-size balanced separator with `A ∪ B = V`.
pub fn balanced_separator_min(g: &Graph) -> Result<(usize, BalancedSeparator)> {
    balanced_separator_min_with(g, Completion::Required)
}

/// Minimum-size balanced separator under the chosen completion rule.
///
/// With completion, a separator is an overlap `X = A ∩ B` together with a split of
/// the components of `g - X` into the two private sides; overlaps are tried by size
/// and lexicographically, and the split is found by subset sum over component sizes.
pub fn balanced_separator_min_with(
    g: &Graph,
    completion: Completion,
) -> Result<(usize, BalancedSeparator)> {
    let n = g.n();
    check_size("balanced separator", n, BALANCED_SEPARATOR_LIMIT)?;
    if completion == Completion::Relaxed {
        return Ok((
            0,
            BalancedSeparator {
                a: VertexSet::empty(),
                b: VertexSet::empty(),
            },
        ));
    }
    let (size, a, b) = balanced_separator_masks(&g.masks());
    Ok((
        size,
        BalancedSeparator {
            a: VertexSet::from_mask(a),
            b: VertexSet::from_mask(b),
        },
    ))
}

/// Returns `(size, A, B)` as masks.
pub(crate) fn balanced_separator_masks(adj: &[u64]) -> (usize, u64, u64) {
    let n = adj.len();
    let full = bits::full(n);
    for k in 0..=n {
        let mut hit = (0, 0);
        let found = bits::for_each_k_subset(n, k, |x| {
            let comps = bits::components(adj, full & !x);
            match split_components(&comps, n) {
                Some(left) => {
                    hit = (left | x, (full & !x & !left) | x);
                    true
                }
                None => false,
            }
        });
        if found {
            return (k, hit.0, hit.1);
        }
    }
    unreachable!("X = V is always a balanced separator")
}

/// Chooses components for the `A` side so both private sides have at most `2n/3`
/// vertices. Prefers the largest feasible `A` side; returns its vertex mask.
fn split_components(comps: &[u64], n: usize) -> Option<u64> {
    let sizes: Vec<usize> = comps.iter().map(|c| c.count_ones() as usize).collect();
    let total: usize = sizes.iter().sum();
    // reachable[i][s]: some subset of the first i components sums to s
    let mut reachable = vec![vec![false; total + 1]; sizes.len() + 1];
    reachable[0][0] = true;
    for (i, &sz) in sizes.iter().enumerate() {
        for s in 0..=total {
            reachable[i + 1][s] = reachable[i][s] || (s >= sz && reachable[i][s - sz]);
        }
    }
    let fits = |p: usize| 3 * p <= 2 * n;
    let target = (0..=total)
        .rev()
        .find(|&s| reachable[sizes.len()][s] && fits(s) && fits(total - s))?;
    let mut left = 0u64;
    let mut s = target;
    for i in (0..sizes.len()).rev() {
        if !reachable[i][s] {
            left |= comps[i];
            s -= sizes[i];
        }
    }
    debug_assert_eq!(s, 0);
    Some(left)
}

/// Largest minimum balanced separator over all nonempty induced subgraphs, with the
/// first maximizing vertex set (subsets visited in increasing bitmask order).
///
/// Induced subgraphs suffice: deleting edges only relaxes the no-crossing-edge rule.
pub fn separation_number(g: &Graph) -> Result<(usize, VertexSet)> {
    let n = g.n();
    check_size("separation number", n, SEPARATION_NUMBER_LIMIT)?;
    let adj = g.masks();
    let mut best = (0, 0u64);
    for s in 1..=bits::full(n) {
        let members: Vec<usize> = bits::iter(s).collect();
        let local: Vec<u64> = members
            .iter()
            .map(|&u| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| adj[u] >> v & 1 == 1)
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let (size, _, _) = balanced_separator_masks(&local);
        if size > best.0 {
            best = (size, s);
        }
    }
    Ok((best.0, VertexSet::from_mask(best.1)))
}

/// The balanced separator built from a half-cutset, with the intermediate data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conversion {
    pub separator: BalancedSeparator,
    /// Components of `g - C`, by decreasing size then smallest vertex.
    pub components: Vec<VertexSet>,
    /// Number of leading components placed on the `A` side.
    pub prefix_len: usize,
    /// Union of the leading components (`A` without the cutset).
    pub a_private: VertexSet,
    /// Union of the remaining components (`B` without the cutset).
    pub b_private: VertexSet,
}

/// Turns a half-cutset `c` into a balanced separator of size `|c|`: order the
/// components of `g - c` by decreasing size, put the longest prefix whose union has
/// at most `2n/3` vertices on the `A` side and the rest on the `B` side, and add `c`
/// to both.
pub fn cutset_to_balanced_separator(g: &Graph, c: &VertexSet) -> Result<Conversion> {
    c.check_range(g.n())?;
    let n = g.n();
    let components = g.components_avoiding(c);
    if let Some(big) = components.iter().find(|comp| 2 * comp.len() > n) {
        return Err(Error::Precondition(format!(
            "{c} is not a half-cutset: component {big} has {} of {n} vertices",
            big.len()
        )));
    }
    let mut prefix_len = 0;
    let mut prefix_size = 0;
    for comp in &components {
        if 3 * (prefix_size + comp.len()) > 2 * n {
            break;
        }
        prefix_size += comp.len();
        prefix_len += 1;
    }
    let a_private = VertexSet::new(components[..prefix_len].iter().flat_map(|s| s.iter()));
    let b_private = VertexSet::new(components[prefix_len..].iter().flat_map(|s| s.iter()));
    if !b_private.is_empty() && 3 * a_private.len() < n {
        return Err(Error::Internal(format!(
            "prefix {a_private} is smaller than a third of {n} although components remain"
        )));
    }
    let separator = BalancedSeparator {
        a: a_private.union(c),
        b: b_private.union(c),
    };
    Ok(Conversion {
        separator,
        components,
        prefix_len,
        a_private,
        b_private,
    })
}

fn check_size(operation: &'static str, n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGraph { operation });
    }
    if n > limit {
        return Err(Error::SizeLimit {
            operation,
            n,
            limit,
        });
    }
    Ok(())
}
