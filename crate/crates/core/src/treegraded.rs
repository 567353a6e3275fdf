//! Tree-graded graphs: a graph covered by connected pieces that pairwise share at
//! most one vertex, with every simple cycle inside a single piece.
//!
//! Pieces are stored as vertex sets and always mean the induced subgraph on that
//! set. The loop condition is decided through the block decomposition: given thin
//! intersections, every simple cycle lies in a piece exactly when every block does.
//! Enumerating cycles is kept as a slower, independent check.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blocks::{blocks, simple_cycles};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::profile::{profile, Invariant, Profile, ProfileOptions, ProfileRow};
use crate::treewidth::{join_decompositions, treewidth_exact, TreeDecomposition};

/// A host graph with an indexed family of pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGrading {
    pub host: Graph,
    pub pieces: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingViolation {
    PieceOutOfRange { piece: usize, vertex: usize },
    EmptyPiece(usize),
    DisconnectedPiece(usize),
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    FatIntersection {
        first: usize,
        second: usize,
        shared: VertexSet,
    },
    /// A block of the host that no single piece contains.
    StraddlingBlock(VertexSet),
    /// A simple cycle that no single piece contains.
    StraddlingCycle(Vec<usize>),
    /// The cycle check stopped at its limit before finding a violation.
    CycleLimit(usize),
}

impl fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingViolation::PieceOutOfRange { piece, vertex } => {
                write!(f, "piece {piece} names vertex {vertex} outside the host")
            }
            GradingViolation::EmptyPiece(i) => write!(f, "piece {i} is empty"),
            GradingViolation::DisconnectedPiece(i) => write!(f, "piece {i} is not connected"),
            GradingViolation::UncoveredVertex(v) => write!(f, "vertex {v} is in no piece"),
            GradingViolation::UncoveredEdge(u, v) => write!(f, "edge ({u}, {v}) is in no piece"),
            GradingViolation::FatIntersection {
                first,
                second,
                shared,
            } => write!(f, "pieces {first} and {second} share {shared}"),
            GradingViolation::StraddlingBlock(b) => write!(f, "block {b} is in no single piece"),
            GradingViolation::StraddlingCycle(c) => write!(f, "cycle {c:?} is in no single piece"),
            GradingViolation::CycleLimit(l) => {
                write!(f, "cycle enumeration stopped after {l} cycles")
            }
        }
    }
}

impl std::error::Error for GradingViolation {}

/// How the simple-loop condition is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopCheck {
    /// Every block must lie in one piece.
    Blocks,
    /// Every enumerated simple cycle must lie in one piece.
    Cycles { limit: usize },
}

pub fn validate_tree_grading(tg: &TreeGrading) -> Result<(), GradingViolation> {
    tg.validate_with(LoopCheck::Blocks)
}

impl TreeGrading {
    pub fn validate(&self) -> Result<(), GradingViolation> {
        self.validate_with(LoopCheck::Blocks)
    }

    pub fn validate_with(&self, check: LoopCheck) -> Result<(), GradingViolation> {
        let n = self.host.n();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, piece) in self.pieces.iter().enumerate() {
            if let Some(v) = piece.iter().find(|&v| v >= n) {
                return Err(GradingViolation::PieceOutOfRange { piece: i, vertex: v });
            }
            if piece.is_empty() {
                return Err(GradingViolation::EmptyPiece(i));
            }
            if !self.host.is_connected_set(piece) {
                return Err(GradingViolation::DisconnectedPiece(i));
            }
            for v in piece.iter() {
                holders[v].push(i);
            }
        }
        if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
            return Err(GradingViolation::UncoveredVertex(v));
        }
        for (u, v) in self.host.edges() {
            if !holders[u].iter().any(|&i| self.pieces[i].contains(v)) {
                return Err(GradingViolation::UncoveredEdge(u, v));
            }
        }
        let mut shared: HashMap<(usize, usize), usize> = HashMap::new();
        for (v, hs) in holders.iter().enumerate() {
            for (a, &i) in hs.iter().enumerate() {
                for &j in &hs[a + 1..] {
                    if let Some(&w) = shared.get(&(i, j)) {
                        return Err(GradingViolation::FatIntersection {
                            first: i,
                            second: j,
                            shared: VertexSet::new([w, v]),
                        });
                    }
                    shared.insert((i, j), v);
                }
            }
        }
        let inside_one_piece =
            |vs: &[usize]| holders[vs[0]].iter().any(|&i| vs.iter().all(|&v| self.pieces[i].contains(v)));
        match check {
            LoopCheck::Blocks => {
                for block in blocks(&self.host).blocks {
                    if !inside_one_piece(block.as_slice()) {
                        return Err(GradingViolation::StraddlingBlock(block));
                    }
                }
            }
            LoopCheck::Cycles { limit } => {
                let cycles = simple_cycles(&self.host, limit);
                if let Some(c) = cycles.cycles.iter().find(|c| !inside_one_piece(c)) {
                    return Err(GradingViolation::StraddlingCycle(c.clone()));
                }
                if cycles.truncated {
                    return Err(GradingViolation::CycleLimit(limit));
                }
            }
        }
        Ok(())
    }

    /// The induced subgraph of piece `i` with its map back to host vertices.
    pub fn piece_graph(&self, i: usize) -> Result<(Graph, Vec<usize>)> {
        self.host.induced_subgraph(&self.pieces[i])
    }

    /// Host graph JSON with an extra `"pieces"` array.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = self.host.to_json_value();
        v["pieces"] = serde_json::to_value(&self.pieces).expect("pieces serialize");
        v
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut v: serde_json::Value = serde_json::from_str(text)?;
        let pieces = v
            .as_object_mut()
            .and_then(|o| o.remove("pieces"))
            .ok_or_else(|| Error::Json("missing `pieces`".into()))?;
        Ok(TreeGrading {
            host: serde_json::from_value(v)?,
            pieces: serde_json::from_value(pieces)?,
        })
    }
}

/// One gluing: `child_vertex` of the child's template copy is identified with
/// `parent_vertex` of the parent's copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingEdge {
    pub parent: usize,
    pub child: usize,
    pub parent_vertex: usize,
    pub child_vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub template: String,
}

/// A tree of template copies glued along single vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub tree_nodes: Vec<TreeNode>,
    pub tree_edges: Vec<GluingEdge>,
}

/// A gluing spec bundled with its templates, as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingDocument {
    pub templates: BTreeMap<String, Graph>,
    #[serde(flatten)]
    pub spec: GluingSpec,
}

impl GluingDocument {
    pub fn compose(&self) -> Result<TreeGrading> {
        compose(&self.spec, &self.templates)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds the host by gluing one copy of a template per tree node, identifying one
/// vertex pair per tree edge. Piece `i` is the image of node `i`'s copy.
pub fn compose(spec: &GluingSpec, templates: &BTreeMap<String, Graph>) -> Result<TreeGrading> {
    let k = spec.tree_nodes.len();
    if k == 0 {
        return Err(Error::Precondition("gluing tree has no nodes".into()));
    }
    let mut copies = Vec::with_capacity(k);
    for (i, node) in spec.tree_nodes.iter().enumerate() {
        let t = templates.get(&node.template).ok_or_else(|| {
            Error::Precondition(format!("node {i} uses unknown template `{}`", node.template))
        })?;
        if t.n() == 0 || !t.is_connected() {
            return Err(Error::Precondition(format!(
                "template `{}` must be non-empty and connected",
                node.template
            )));
        }
        copies.push(t);
    }
    if spec.tree_edges.len() + 1 != k {
        return Err(Error::Precondition(format!(
            "{} gluing edges cannot form a tree on {k} nodes",
            spec.tree_edges.len()
        )));
    }
    let mut offsets = Vec::with_capacity(k + 1);
    offsets.push(0);
    for t in &copies {
        offsets.push(offsets.last().unwrap() + t.n());
    }
    let total = offsets[k];
    let mut node_root: Vec<usize> = (0..k).collect();
    let mut parent: Vec<usize> = (0..total).collect();
    for (e, edge) in spec.tree_edges.iter().enumerate() {
        let (p, c) = (edge.parent, edge.child);
        if p >= k || c >= k || p == c {
            return Err(Error::Precondition(format!(
                "gluing edge #{e} joins invalid nodes {p} and {c}"
            )));
        }
        if edge.parent_vertex >= copies[p].n() || edge.child_vertex >= copies[c].n() {
            return Err(Error::Precondition(format!(
                "gluing edge #{e} names a vertex outside its template"
            )));
        }
        let (rp, rc) = (find(&mut node_root, p), find(&mut node_root, c));
        if rp == rc {
            return Err(Error::Precondition(format!("gluing edge #{e} closes a cycle")));
        }
        node_root[rp] = rc;
        let a = find(&mut parent, offsets[p] + edge.parent_vertex);
        let b = find(&mut parent, offsets[c] + edge.child_vertex);
        parent[a] = b;
    }
    let mut host_id = vec![usize::MAX; total];
    let mut next = 0;
    let mut image = Vec::with_capacity(total);
    for x in 0..total {
        let r = find(&mut parent, x);
        if host_id[r] == usize::MAX {
            host_id[r] = next;
            next += 1;
        }
        image.push(host_id[r]);
    }
    let mut pieces = Vec::with_capacity(k);
    let mut edges = BTreeSet::new();
    for (i, t) in copies.iter().enumerate() {
        let piece = VertexSet::new((0..t.n()).map(|v| image[offsets[i] + v]));
        if piece.len() != t.n() {
            return Err(Error::Precondition(format!(
                "gluing identifies two vertices of node {i}'s copy"
            )));
        }
        for (u, v) in t.edges() {
            let (a, b) = (image[offsets[i] + u], image[offsets[i] + v]);
            edges.insert((a.min(b), a.max(b)));
        }
        pieces.push(piece);
    }
    let host = Graph::new(next, edges)?;
    Ok(TreeGrading { host, pieces })
}

/// Restricts a grading to the induced subgraph on `s`: the new pieces are the
/// intersections of `s` with the old pieces that keep at least two vertices.
/// Returns the grading together with the map from new to old vertex indices.
pub fn induced_grading(tg: &TreeGrading, s: &VertexSet) -> Result<(TreeGrading, Vec<usize>)> {
    s.check_range(tg.host.n())?;
    if s.len() < 2 {
        return Err(Error::Precondition(
            "induced grading needs at least two vertices".into(),
        ));
    }
    if !tg.host.is_connected_set(s) {
        return Err(Error::Precondition(format!(
            "{s} induces a disconnected subgraph; split it into components first"
        )));
    }
    let (host, map) = tg.host.induced_subgraph(s)?;
    let mut index = HashMap::with_capacity(map.len());
    for (i, &v) in map.iter().enumerate() {
        index.insert(v, i);
    }
    let pieces = tg
        .pieces
        .iter()
        .map(|p| VertexSet::new(p.iter().filter_map(|v| index.get(&v).copied())))
        .filter(|p| p.len() >= 2)
        .collect();
    Ok((TreeGrading { host, pieces }, map))
}

/// Orders the pieces so each one after the first meets the union of its
/// predecessors in exactly one vertex. Starts from piece 0 and always takes the
/// lowest-index piece that meets the union.
pub fn grading_order(tg: &TreeGrading) -> Result<Vec<usize>> {
    let p = tg.pieces.len();
    if p == 0 {
        return Err(Error::Precondition("grading has no pieces".into()));
    }
    let mut covered = vec![false; tg.host.n()];
    let mut used = vec![false; p];
    let mut order = Vec::with_capacity(p);
    let mut take = |i: usize, covered: &mut Vec<bool>, used: &mut Vec<bool>| {
        used[i] = true;
        order.push(i);
        for v in tg.pieces[i].iter() {
            covered[v] = true;
        }
    };
    take(0, &mut covered, &mut used);
    for _ in 1..p {
        let next = (0..p)
            .filter(|&i| !used[i])
            .map(|i| (i, tg.pieces[i].iter().filter(|&v| covered[v]).count()))
            .find(|&(_, meet)| meet > 0);
        match next {
            Some((i, 1)) => take(i, &mut covered, &mut used),
            Some((i, meet)) => {
                return Err(Error::Internal(format!(
                    "piece {i} meets the earlier pieces in {meet} vertices"
                )))
            }
            None => {
                return Err(Error::Internal(
                    "no remaining piece meets the earlier pieces".into(),
                ))
            }
        }
    }
    Ok(order)
}

/// Treewidth of a connected tree-graded host from its pieces: solve each piece
/// exactly, then join the decompositions one piece at a time in
/// [`grading_order`]. The width is the maximum piece treewidth.
pub fn tw_via_grading(tg: &TreeGrading) -> Result<(usize, TreeDecomposition)> {
    if !tg.host.is_connected() {
        return Err(Error::Precondition("host graph must be connected".into()));
    }
    let order = grading_order(tg)?;
    let mut solved = Vec::with_capacity(tg.pieces.len());
    for i in 0..tg.pieces.len() {
        let (g, map) = tg.piece_graph(i)?;
        let (w, td) = treewidth_exact(&g)?;
        let td = TreeDecomposition {
            bags: td.bags.iter().map(|b| b.map(&map)).collect(),
            tree_edges: td.tree_edges,
        };
        solved.push((w, td));
    }
    let mut width = solved[order[0]].0;
    let mut acc = solved[order[0]].1.clone();
    let mut union = tg.pieces[order[0]].clone();
    for &i in &order[1..] {
        let shared = union.intersection(&tg.pieces[i]);
        acc = join_decompositions(&acc, &solved[i].1, &shared)?;
        union = union.union(&tg.pieces[i]);
        width = width.max(solved[i].0);
    }
    debug_assert_eq!(acc.width(), width);
    Ok((width, acc))
}

/// Pointwise maximum over pieces of the piece treewidth profiles. Witnesses are
/// reported in host vertex indices; identical piece subgraphs are solved once.
pub fn tw_profile_via_pieces(tg: &TreeGrading, r: usize, opts: &ProfileOptions) -> Result<Profile> {
    let mut cache: HashMap<(usize, Vec<(usize, usize)>), Profile> = HashMap::new();
    let mut combined: Option<Profile> = None;
    for i in 0..tg.pieces.len() {
        let (g, map) = tg.piece_graph(i)?;
        let key = (g.n(), g.edges().collect::<Vec<_>>());
        let piece_profile = match cache.get(&key) {
            Some(p) => p.clone(),
            None => {
                let p = profile(&g, Invariant::Treewidth, r, opts)?;
                cache.insert(key, p.clone());
                p
            }
        };
        let mapped = Profile {
            rows: piece_profile
                .rows
                .iter()
                .map(|row| ProfileRow {
                    k: row.k,
                    value: row.value,
                    witness: row.witness.map(&map),
                })
                .collect(),
            ..piece_profile
        };
        combined = Some(match combined {
            None => mapped,
            Some(mut acc) => {
                for (a, b) in acc.rows.iter_mut().zip(mapped.rows) {
                    if b.value > a.value {
                        *a = b;
                    }
                }
                acc.subgraphs += mapped.subgraphs;
                acc.partial |= mapped.partial;
                acc
            }
        });
    }
    combined.ok_or_else(|| Error::Precondition("grading has no pieces".into()))
}
