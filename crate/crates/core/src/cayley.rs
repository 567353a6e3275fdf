//! Balls in Cayley graphs of free products `G * H`, with their coset pieces.
//!
//! Elements of `G * H` are alternating words of non-identity syllables. Right
//! multiplication by a generator merges into (or cancels) the last syllable when
//! it belongs to the same factor and appends a syllable otherwise.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::treegraded::TreeGrading;

pub const DEFAULT_BALL_CAP: usize = 5000;

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 24;
const ASSOCIATIVITY_SAMPLES: usize = 20_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed;

/// A group with a finite symmetric generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    /// Elements `0..order`; `table[a][b]` is the product `ab`.
    FiniteTable {
        order: usize,
        table: Vec<Vec<usize>>,
        gens: Vec<usize>,
    },
    /// The integers with generators `+1` and `-1`.
    CyclicInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupViolation {
    Shape(String),
    NotClosed { a: usize, b: usize, product: usize },
    NoIdentity,
    NoInverse(usize),
    NotAssociative { a: usize, b: usize, c: usize },
    IdentityGenerator,
    GeneratorOutOfRange(usize),
    InverseNotGenerator { generator: usize, inverse: usize },
    NotGenerating { reached: usize, order: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::Shape(s) => f.write_str(s),
            GroupViolation::NotClosed { a, b, product } => {
                write!(f, "{a}*{b} = {product} is not an element")
            }
            GroupViolation::NoIdentity => f.write_str("no identity element"),
            GroupViolation::NoInverse(a) => write!(f, "{a} has no inverse"),
            GroupViolation::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
            GroupViolation::IdentityGenerator => f.write_str("the identity is listed as a generator"),
            GroupViolation::GeneratorOutOfRange(g) => write!(f, "generator {g} is not an element"),
            GroupViolation::InverseNotGenerator { generator, inverse } => {
                write!(f, "generator {generator} has inverse {inverse}, which is not a generator")
            }
            GroupViolation::NotGenerating { reached, order } => {
                write!(f, "generators reach {reached} of {order} elements")
            }
        }
    }
}

impl std::error::Error for GroupViolation {}

impl From<GroupViolation> for Error {
    fn from(v: GroupViolation) -> Self {
        Error::Group(v.to_string())
    }
}

impl GroupSpec {
    /// `Z_k` with the given generators.
    pub fn cyclic(k: usize, gens: impl IntoIterator<Item = usize>) -> GroupSpec {
        GroupSpec::FiniteTable {
            order: k,
            table: (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect(),
            gens: gens.into_iter().collect(),
        }
    }

    /// `Z_k` generated by all non-identity elements.
    pub fn cyclic_all(k: usize) -> GroupSpec {
        GroupSpec::cyclic(k, 1..k)
    }

    /// The permutation group generated by `gens`, each a permutation of `0..d` in
    /// one-line notation. Elements are numbered in BFS order from the identity, and
    /// the generating set is closed under inverses. Products compose left to right:
    /// `(p*q)(i) = q(p(i))`.
    pub fn permutation_group(gens: &[Vec<usize>]) -> Result<GroupSpec> {
        let d = gens.first().map_or(0, Vec::len);
        for p in gens {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Group(format!("{p:?} is not a permutation of 0..{d}")));
            }
        }
        let compose = |p: &[usize], q: &[usize]| p.iter().map(|&i| q[i]).collect::<Vec<usize>>();
        let mut all_gens: Vec<Vec<usize>> = gens.to_vec();
        for p in gens {
            let mut inv = vec![0; d];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            if !all_gens.contains(&inv) {
                all_gens.push(inv);
            }
        }
        let identity: Vec<usize> = (0..d).collect();
        all_gens.retain(|p| *p != identity);
        let mut index = HashMap::from([(identity.clone(), 0)]);
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for s in &all_gens {
                let p = compose(&elements[i], s);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            i += 1;
        }
        let table = elements
            .iter()
            .map(|p| elements.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        Ok(GroupSpec::FiniteTable {
            order: elements.len(),
            table,
            gens: all_gens.iter().map(|p| index[p]).collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<GroupSpec> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Checks shape, closure, identity, inverses, associativity (exhaustive up to
/// order 24, sampled above) and that the generators are symmetric and generate.
pub fn validate_group(spec: &GroupSpec) -> Result<(), GroupViolation> {
    factor(spec).map(|_| ())
}

/// A validated factor group.
#[derive(Clone, Debug)]
enum FactorGroup {
    Finite {
        table: Vec<Vec<usize>>,
        identity: usize,
        gens: Vec<usize>,
    },
    Integers,
}

impl FactorGroup {
    fn identity(&self) -> i64 {
        match self {
            FactorGroup::Finite { identity, .. } => *identity as i64,
            FactorGroup::Integers => 0,
        }
    }

    fn mul(&self, a: i64, b: i64) -> i64 {
        match self {
            FactorGroup::Finite { table, .. } => table[a as usize][b as usize] as i64,
            FactorGroup::Integers => a + b,
        }
    }

    fn gens(&self) -> Vec<i64> {
        match self {
            FactorGroup::Finite { gens, .. } => gens.iter().map(|&g| g as i64).collect(),
            FactorGroup::Integers => vec![1, -1],
        }
    }
}

fn factor(spec: &GroupSpec) -> Result<FactorGroup, GroupViolation> {
    let (order, table, gens) = match spec {
        GroupSpec::CyclicInfinite => return Ok(FactorGroup::Integers),
        GroupSpec::FiniteTable { order, table, gens } => (*order, table, gens),
    };
    if order == 0 {
        return Err(GroupViolation::Shape("order must be positive".into()));
    }
    if table.len() != order || table.iter().any(|row| row.len() != order) {
        return Err(GroupViolation::Shape(format!("table must be {order}x{order}")));
    }
    for (a, row) in table.iter().enumerate() {
        if let Some((b, &product)) = row.iter().enumerate().find(|&(_, &p)| p >= order) {
            return Err(GroupViolation::NotClosed { a, b, product });
        }
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(GroupViolation::NoIdentity)?;
    let mut inverse = vec![0; order];
    for (a, inv) in inverse.iter_mut().enumerate() {
        *inv = (0..order)
            .find(|&b| table[a][b] == identity && table[b][a] == identity)
            .ok_or(GroupViolation::NoInverse(a))?;
    }
    let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
    if order <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if !assoc(a, b, c) {
                        return Err(GroupViolation::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
            if !assoc(a, b, c) {
                return Err(GroupViolation::NotAssociative { a, b, c });
            }
        }
    }
    for &g in gens {
        if g >= order {
            return Err(GroupViolation::GeneratorOutOfRange(g));
        }
        if g == identity {
            return Err(GroupViolation::IdentityGenerator);
        }
        if !gens.contains(&inverse[g]) {
            return Err(GroupViolation::InverseNotGenerator {
                generator: g,
                inverse: inverse[g],
            });
        }
    }
    let mut seen = vec![false; order];
    seen[identity] = true;
    let mut queue = VecDeque::from([identity]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = table[x][g];
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    if reached < order {
        return Err(GroupViolation::NotGenerating { reached, order });
    }
    let mut gens = gens.clone();
    gens.dedup();
    Ok(FactorGroup::Finite {
        table: table.clone(),
        identity,
        gens,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    G,
    H,
}

impl Factor {
    fn tag(self) -> char {
        match self {
            Factor::G => 'g',
            Factor::H => 'h',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub factor: Factor,
    pub element: i64,
}

/// An element of `G * H` in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalFormWord {
    pub syllables: Vec<Syllable>,
}

impl NormalFormWord {
    pub fn identity() -> Self {
        NormalFormWord::default()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The word with its trailing syllable removed if that syllable is in `factor`.
    /// Words with the same stem and factor lie in the same coset.
    pub fn coset_stem(&self, factor: Factor) -> &[Syllable] {
        match self.syllables.last() {
            Some(s) if s.factor == factor => &self.syllables[..self.len() - 1],
            _ => &self.syllables,
        }
    }
}

impl fmt::Display for NormalFormWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}{}", s.factor.tag(), s.element)?;
        }
        Ok(())
    }
}

/// The free product of two validated factors.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    g: FactorGroup,
    h: FactorGroup,
}

impl FreeProduct {
    pub fn new(g: &GroupSpec, h: &GroupSpec) -> Result<FreeProduct> {
        Ok(FreeProduct {
            g: factor(g)?,
            h: factor(h)?,
        })
    }

    fn group(&self, f: Factor) -> &FactorGroup {
        match f {
            Factor::G => &self.g,
            Factor::H => &self.h,
        }
    }

    /// Generators of `G` then of `H`, in input order.
    pub fn generators(&self) -> Vec<Syllable> {
        let of = |factor: Factor| {
            self.group(factor)
                .gens()
                .into_iter()
                .map(move |element| Syllable { factor, element })
        };
        of(Factor::G).chain(of(Factor::H)).collect()
    }

    /// Right multiplication by a single factor element.
    pub fn mul(&self, w: &NormalFormWord, s: Syllable) -> NormalFormWord {
        let group = self.group(s.factor);
        let mut out = w.clone();
        if s.element == group.identity() {
            return out;
        }
        match out.syllables.last_mut() {
            Some(last) if last.factor == s.factor => {
                let product = group.mul(last.element, s.element);
                if product == group.identity() {
                    out.syllables.pop();
                } else {
                    last.element = product;
                }
            }
            _ => out.syllables.push(s),
        }
        out
    }
}

/// A ball of a free-product Cayley graph. Vertex `i` of the host is `words[i]`;
/// the host carries the words as vertex labels.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub grading: TreeGrading,
    pub words: Vec<NormalFormWord>,
}

impl CayleyBall {
    pub fn graph(&self) -> &Graph {
        &self.grading.host
    }
}

pub fn free_product_ball(g: &GroupSpec, h: &GroupSpec, radius: usize) -> Result<CayleyBall> {
    free_product_ball_capped(g, h, radius, DEFAULT_BALL_CAP)
}

/// BFS from the identity over `S ⊔ T` up to `radius`. Edges join words that differ
/// by one generator when both are in the ball. Pieces are the coset intersections
/// `wG ∩ ball` and `wH ∩ ball` with at least two vertices; a ball of radius 0 has
/// the single piece `{0}`.
pub fn free_product_ball_capped(
    g: &GroupSpec,
    h: &GroupSpec,
    radius: usize,
    cap: usize,
) -> Result<CayleyBall> {
    let fp = FreeProduct::new(g, h)?;
    let gens = fp.generators();
    let (words, edges) = bfs(NormalFormWord::identity(), radius, cap, |w| {
        gens.iter().map(|&s| fp.mul(w, s)).collect()
    })?;
    let mut host = Graph::new(words.len(), edges)?;
    for (i, w) in words.iter().enumerate() {
        host.set_label(i, w.to_string())?;
    }

    let mut cosets: HashMap<(&[Syllable], Factor), Vec<usize>> = HashMap::new();
    let mut keys = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for f in [Factor::G, Factor::H] {
            let key = (w.coset_stem(f), f);
            let members = cosets.entry(key).or_insert_with(|| {
                keys.push(key);
                Vec::new()
            });
            members.push(i);
        }
    }
    let mut pieces: Vec<VertexSet> = keys
        .iter()
        .map(|k| VertexSet::new(cosets[k].iter().copied()))
        .filter(|p| p.len() >= 2)
        .collect();
    if words.len() == 1 {
        pieces.push(VertexSet::singleton(0));
    }
    Ok(CayleyBall {
        grading: TreeGrading { host, pieces },
        words,
    })
}

/// Ball of radius `radius` around the identity in `Cay(G, S)`. For a finite group
/// and a radius at least its diameter this is the whole Cayley graph. Vertices are
/// numbered in BFS order and labelled with their group element.
pub fn cayley_ball(g: &GroupSpec, radius: usize) -> Result<Graph> {
    cayley_ball_capped(g, radius, DEFAULT_BALL_CAP)
}

pub fn cayley_ball_capped(g: &GroupSpec, radius: usize, cap: usize) -> Result<Graph> {
    let group = factor(g)?;
    let gens = group.gens();
    let (elements, edges) = bfs(group.identity(), radius, cap, |&x| {
        gens.iter().map(|&s| group.mul(x, s)).collect()
    })?;
    let mut graph = Graph::new(elements.len(), edges)?;
    for (i, x) in elements.iter().enumerate() {
        graph.set_label(i, x.to_string())?;
    }
    Ok(graph)
}

type Ball<T> = (Vec<T>, BTreeSet<(usize, usize)>);

fn bfs<T, F>(start: T, radius: usize, cap: usize, step: F) -> Result<Ball<T>>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T) -> Vec<T>,
{
    let mut index = HashMap::from([(start.clone(), 0usize)]);
    let mut items = vec![start];
    let mut depth = vec![0usize];
    let mut edges = BTreeSet::new();
    let mut i = 0;
    while i < items.len() {
        for next in step(&items[i]) {
            let j = match index.get(&next) {
                Some(&j) => j,
                None if depth[i] < radius => {
                    if items.len() == cap {
                        return Err(Error::BallCap { cap });
                    }
                    index.insert(next.clone(), items.len());
                    items.push(next);
                    depth.push(depth[i] + 1);
                    items.len() - 1
                }
                None => continue,
            };
            if i != j {
                edges.insert((i.min(j), i.max(j)));
            }
        }
        i += 1;
    }
    Ok((items, edges))
}
