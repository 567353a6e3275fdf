//! Profiles: for each `k`, the maximum of an invariant over subgraphs with at most
//! `k` vertices.
//!
//! Every invariant here is monotone under adding edges on a fixed vertex
//! set, so the maximum is taken over induced subgraphs; by default only connected
//! ones are enumerated (see [`SubgraphMode`]). Subgraphs are evaluated in batches,
//! optionally on a thread pool, and reduced in enumeration order so the result does
//! not depend on the number of workers.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{for_each_set, SubgraphMode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::layout::{self, LayoutParameter, LAYOUT_LIMIT};
use crate::separation::{self, BALANCED_SEPARATOR_LIMIT, CUTSIZE_LIMIT};
use crate::treewidth::{self, TREEWIDTH_LIMIT};

/// Default cap on the number of subgraphs a profile evaluates.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

const BATCH: usize = 1 << 15;

/// Graph invariants that have a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    Treewidth,
    Cutsize,
    BalancedSeparator,
    Layout(LayoutParameter),
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Treewidth => "tw",
            Invariant::Cutsize => "cut",
            Invariant::BalancedSeparator => "bsep",
            Invariant::Layout(LayoutParameter::Cutwidth) => "cw",
            Invariant::Layout(LayoutParameter::Pathwidth) => "pw",
            Invariant::Layout(LayoutParameter::Sumcut) => "sumcut",
        }
    }

    /// Largest subgraph the underlying exact solver accepts.
    pub fn limit(self) -> usize {
        match self {
            Invariant::Treewidth => TREEWIDTH_LIMIT,
            Invariant::Cutsize => CUTSIZE_LIMIT,
            Invariant::BalancedSeparator => BALANCED_SEPARATOR_LIMIT,
            Invariant::Layout(_) => LAYOUT_LIMIT,
        }
    }

    /// Exact value on a whole graph.
    pub fn value(self, g: &Graph) -> Result<usize> {
        Ok(match self {
            Invariant::Treewidth => treewidth::treewidth_exact(g)?.0,
            Invariant::Cutsize => separation::cutsize_exact(g)?.value,
            Invariant::BalancedSeparator => separation::balanced_separator_min(g)?.0,
            Invariant::Layout(LayoutParameter::Cutwidth) => layout::cutwidth_exact(g)?.0,
            Invariant::Layout(LayoutParameter::Pathwidth) => layout::pathwidth_exact(g)?.0,
            Invariant::Layout(LayoutParameter::Sumcut) => layout::sumcut_exact(g)?.0,
        })
    }

    fn value_of_masks(self, adj: &[u64]) -> usize {
        match self {
            Invariant::Treewidth => treewidth::treewidth_masks(adj).0,
            Invariant::Cutsize => separation::cutsize_masks(adj).0,
            Invariant::BalancedSeparator => separation::balanced_separator_masks(adj).0,
            Invariant::Layout(p) => layout::layout_masks(adj, p).0,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tw" | "treewidth" => Ok(Invariant::Treewidth),
            "cut" | "sep" | "cutsize" => Ok(Invariant::Cutsize),
            "bsep" => Ok(Invariant::BalancedSeparator),
            other => other
                .parse::<LayoutParameter>()
                .map(Invariant::Layout)
                .map_err(|_| Error::Precondition(format!("unknown invariant `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileOptions {
    pub mode: SubgraphMode,
    /// Maximum number of subgraphs to evaluate; beyond it the profile is partial.
    pub budget: u64,
    /// Worker threads; 1 evaluates on the calling thread.
    pub jobs: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            mode: SubgraphMode::Connected,
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub k: usize,
    pub value: usize,
    /// A vertex set of size at most `k` attaining `value`.
    pub witness: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub invariant: Invariant,
    pub rows: Vec<ProfileRow>,
    /// Number of subgraphs evaluated.
    pub subgraphs: u64,
    /// Set when the budget stopped enumeration; values are then lower bounds.
    pub partial: bool,
}

impl Profile {
    pub fn values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.value).collect()
    }

    pub fn value_at(&self, k: usize) -> Option<usize> {
        self.rows.get(k.checked_sub(1)?).map(|r| r.value)
    }

    /// CSV table with header `k,value,lower_bound,witness`; witnesses are
    /// space-separated vertex lists.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "value", "lower_bound", "witness"])
            .expect("in-memory write");
        for row in &self.rows {
            let witness = row
                .witness
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                row.k.to_string(),
                row.value.to_string(),
                self.partial.to_string(),
                witness,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }
}

/// Profile of `invariant` over subgraphs of `x` with `1..=r` vertices.
pub fn profile(x: &Graph, invariant: Invariant, r: usize, opts: &ProfileOptions) -> Result<Profile> {
    if r == 0 {
        return Err(Error::Precondition("profile size bound must be at least 1".into()));
    }
    if x.n() == 0 {
        return Err(Error::EmptyGraph { operation: "profile" });
    }
    let largest = r.min(x.n());
    if largest > invariant.limit() {
        return Err(Error::SizeLimit {
            operation: invariant.name(),
            n: largest,
            limit: invariant.limit(),
        });
    }
    let pool = if opts.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?,
        )
    } else {
        None
    };

    // best[s] = (value, witness) over sets of size exactly s, first maximizer kept
    let mut best: Vec<Option<(usize, Vec<usize>)>> = vec![None; largest + 1];
    let mut batch: Vec<Vec<usize>> = Vec::with_capacity(BATCH);
    let mut evaluated = 0u64;
    let mut partial = false;

    let flush = |batch: &mut Vec<Vec<usize>>, best: &mut Vec<Option<(usize, Vec<usize>)>>| {
        let eval = |set: &Vec<usize>| invariant.value_of_masks(&x.induced_masks(set));
        let values: Vec<usize> = match &pool {
            Some(pool) => pool.install(|| batch.par_iter().map(eval).collect()),
            None => batch.iter().map(eval).collect(),
        };
        for (set, value) in batch.drain(..).zip(values) {
            let slot = &mut best[set.len()];
            if slot.as_ref().is_none_or(|(v, _)| value > *v) {
                *slot = Some((value, set));
            }
        }
    };

    let _ = for_each_set(x, largest, opts.mode, |set| {
        if evaluated == opts.budget {
            partial = true;
            return ControlFlow::Break(());
        }
        evaluated += 1;
        batch.push(set.to_vec());
        if batch.len() == BATCH {
            flush(&mut batch, &mut best);
        }
        ControlFlow::Continue(())
    });
    flush(&mut batch, &mut best);

    let mut rows = Vec::with_capacity(r);
    let mut running: Option<(usize, Vec<usize>)> = None;
    for k in 1..=r {
        if let Some(Some((v, w))) = best.get(k) {
            if running.as_ref().is_none_or(|(rv, _)| v > rv) {
                running = Some((*v, w.clone()));
            }
        }
        let (value, witness) = running
            .clone()
            .ok_or_else(|| Error::Internal("no subgraph evaluated".into()))?;
        rows.push(ProfileRow {
            k,
            value,
            witness: VertexSet::new(witness),
        });
    }
    Ok(Profile {
        invariant,
        rows,
        subgraphs: evaluated,
        partial,
    })
}

/// Treewidth profile with default options.
pub fn tw_profile(x: &Graph, r: usize) -> Result<Profile> {
    profile(x, Invariant::Treewidth, r, &ProfileOptions::default())
}

/// Separation (cutsize) profile with default options.
pub fn sep_profile(x: &Graph, r: usize) -> Result<Profile> {
    profile(x, Invariant::Cutsize, r, &ProfileOptions::default())
}

/// Profiles of all three layout parameters.
pub fn layout_profiles(x: &Graph, r: usize, opts: &ProfileOptions) -> Result<Vec<Profile>> {
    LayoutParameter::ALL
        .iter()
        .map(|&p| profile(x, Invariant::Layout(p), r, opts))
        .collect()
}
