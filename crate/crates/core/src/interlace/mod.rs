//! The multivariate interlace polynomial
//!
//! ```text
//! B(G) = Σ_{A ∩ B = ∅} x_A y_B u^{rk(G∇B[A∪B])} v^{n(G∇B[A∪B])}
//! ```
//!
//! computed two independent ways: by enumerating the `3^n` disjoint pairs
//! ([`brute_force_b`]) and by the pivot/local-complementation reduction
//! ([`recursive_b`]). Specializations live in [`specialize`], graph
//! reconstruction from `B` in [`reconstruct`].

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2::rank_of_rows;
use crate::graph::{Graph, GraphError, VertexId};
use crate::poly::{Indeterminate, Monomial, MultiPoly, Substitution};

pub mod reconstruct;
pub mod specialize;

/// Graphs larger than this are not enumerated pair by pair.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterlaceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {0} vertices; exhaustive enumeration is limited to {MAX_BRUTE_FORCE_VERTICES}")]
    TooLarge(usize),
    #[error("monomial {0} has u-exponent larger than its quasi-degree")]
    ThetaExponent(String),
    #[error("the (Q1)-(Q3) recursion needs a loop-free graph; `{0}` is looped")]
    LoopedGraph(String),
    #[error("`{0}` and `{1}` are not an edge between unlooped vertices")]
    NotUnloopedEdge(String, String),
    #[error("{0} is not a valid reduction step for this graph")]
    InvalidStep(String),
    #[error("cannot reconstruct a graph: {0}")]
    Reconstruct(String),
}

pub(crate) fn u() -> MultiPoly {
    MultiPoly::ordinary("u")
}

pub(crate) fn v() -> MultiPoly {
    MultiPoly::ordinary("v")
}

pub(crate) fn xv(g: &Graph, i: usize) -> MultiPoly {
    MultiPoly::indexed("x", g.vertex(i).clone())
}

pub(crate) fn yv(g: &Graph, i: usize) -> MultiPoly {
    MultiPoly::indexed("y", g.vertex(i).clone())
}

/// One term `m(G,A,B)` of the static definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlaceTerm {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub rank: usize,
    pub corank: usize,
}

impl InterlaceTerm {
    /// `x_A y_B u^rank v^corank`.
    pub fn monomial(&self) -> Monomial {
        let mut powers: Vec<(Indeterminate, u32)> = Vec::new();
        powers.extend(self.a.iter().map(|a| (Indeterminate::indexed("x", a.clone()), 1)));
        powers.extend(self.b.iter().map(|b| (Indeterminate::indexed("y", b.clone()), 1)));
        powers.push((Indeterminate::ordinary("u"), self.rank as u32));
        powers.push((Indeterminate::ordinary("v"), self.corank as u32));
        Monomial::from_powers(powers)
    }
}

/// Where a vertex sits in a pair `(A, B)`: outside, in `A`, or in `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Out = 0,
    InA = 1,
    InB = 2,
}

impl Place {
    pub const ALL: [Place; 3] = [Place::Out, Place::InA, Place::InB];

    fn of(i: usize, a: u64, b: u64) -> Place {
        if a >> i & 1 == 1 {
            Place::InA
        } else if b >> i & 1 == 1 {
            Place::InB
        } else {
            Place::Out
        }
    }
}

/// Indeterminate tags standing for `z_c` and `w_c`: `(x, y)` for an
/// unlooped vertex, `(y, x)` for a looped one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetaVars {
    pub z: &'static str,
    pub w: &'static str,
}

impl MetaVars {
    pub fn for_loop(looped: bool) -> MetaVars {
        if looped {
            MetaVars { z: "y", w: "x" }
        } else {
            MetaVars { z: "x", w: "y" }
        }
    }

    pub fn at(g: &Graph, i: usize) -> MetaVars {
        MetaVars::for_loop(g.is_looped_at(i))
    }

    pub fn z_of(&self, g: &Graph, i: usize) -> MultiPoly {
        MultiPoly::indexed(self.z, g.vertex(i).clone())
    }

    pub fn w_of(&self, g: &Graph, i: usize) -> MultiPoly {
        MultiPoly::indexed(self.w, g.vertex(i).clone())
    }
}

/// Packed adjacency rows of `g` (requires at most 64 vertices).
fn packed_rows(g: &Graph) -> Vec<u64> {
    let adj = g.adjacency();
    (0..g.len()).map(|i| adj.row(i)[0]).collect()
}

/// Rank of `G∇B[A∪B]` from packed rows.
fn pair_rank(rows: &[u64], a: u64, b: u64, scratch: &mut Vec<u64>) -> usize {
    let s = a | b;
    scratch.clear();
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut r = rows[i] & s;
        if b >> i & 1 == 1 {
            r ^= 1 << i;
        }
        scratch.push(r);
    }
    rank_of_rows(scratch)
}

/// Calls `visit(A, B)` for every disjoint pair: `A` ascending in binary
/// order, then `B` ascending over the subsets of the complement of `A`.
fn for_each_pair(n: usize, mut visit: impl FnMut(u64, u64)) {
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut a: u64 = 0;
    loop {
        let comp = full & !a;
        let mut b: u64 = 0;
        loop {
            visit(a, b);
            if b == comp {
                break;
            }
            b = (b.wrapping_sub(comp)) & comp;
        }
        if a == full {
            break;
        }
        a += 1;
    }
}

fn check_size(g: &Graph) -> Result<(), InterlaceError> {
    if g.len() > MAX_BRUTE_FORCE_VERTICES {
        return Err(InterlaceError::TooLarge(g.len()));
    }
    Ok(())
}

/// Every term `m(G,A,B)` of the static definition, in enumeration order.
pub fn interlace_terms(g: &Graph) -> Result<Vec<InterlaceTerm>, InterlaceError> {
    check_size(g)?;
    let rows = packed_rows(g);
    let mut scratch = Vec::new();
    let mut out = Vec::new();
    let pick = |mask: u64| -> Vec<VertexId> {
        (0..g.len()).filter(|i| mask >> i & 1 == 1).map(|i| g.vertex(i).clone()).collect()
    };
    for_each_pair(g.len(), |a, b| {
        let rank = pair_rank(&rows, a, b, &mut scratch);
        let size = (a | b).count_ones() as usize;
        out.push(InterlaceTerm {
            a: pick(a),
            b: pick(b),
            rank,
            corank: size - rank,
        });
    });
    Ok(out)
}

/// Sums `m(G,A,B)` into `buckets` polynomials; `bucket` picks the slot
/// for each pair or drops it.
fn brute_force_buckets(
    g: &Graph,
    buckets: usize,
    mut bucket: impl FnMut(u64, u64) -> Option<usize>,
) -> Result<Vec<MultiPoly>, InterlaceError> {
    check_size(g)?;
    let n = g.len();
    let rows = packed_rows(g);
    let xs: Vec<Indeterminate> = (0..n).map(|i| Indeterminate::indexed("x", g.vertex(i).clone())).collect();
    let ys: Vec<Indeterminate> = (0..n).map(|i| Indeterminate::indexed("y", g.vertex(i).clone())).collect();
    let (iu, iv) = (Indeterminate::ordinary("u"), Indeterminate::ordinary("v"));
    let mut scratch = Vec::new();
    let mut out = vec![MultiPoly::zero(); buckets];
    for_each_pair(n, |a, b| {
        let Some(slot) = bucket(a, b) else {
            return;
        };
        let rank = pair_rank(&rows, a, b, &mut scratch);
        let size = (a | b).count_ones() as usize;
        let mut powers = Vec::with_capacity(size + 2);
        for i in 0..n {
            if a >> i & 1 == 1 {
                powers.push((xs[i].clone(), 1));
            } else if b >> i & 1 == 1 {
                powers.push((ys[i].clone(), 1));
            }
        }
        powers.push((iu.clone(), rank as u32));
        powers.push((iv.clone(), (size - rank) as u32));
        out[slot].add_term(Monomial::from_powers(powers), BigInt::from(1));
    });
    Ok(out)
}

/// Sum of `m(G,A,B)` over the pairs accepted by `keep`.
pub(crate) fn brute_force_filtered(g: &Graph, mut keep: impl FnMut(u64, u64) -> bool) -> Result<MultiPoly, InterlaceError> {
    let mut out = brute_force_buckets(g, 1, |a, b| keep(a, b).then_some(0))?;
    Ok(out.pop().expect("one bucket"))
}

/// `B(G)` by its static definition: one monomial per disjoint pair `(A,B)`.
pub fn brute_force_b(g: &Graph) -> Result<MultiPoly, InterlaceError> {
    brute_force_filtered(g, |_, _| true)
}

/// `B_ij`: the part of `B(G)` whose pairs put `a` at place `i` and `b` at place `j`.
pub fn intermediate_bij(g: &Graph, a: &str, b: &str, i: Place, j: Place) -> Result<MultiPoly, InterlaceError> {
    let ia = g.index_of(a).ok_or_else(|| GraphError::UnknownVertex(a.into()))?;
    let ib = g.index_of(b).ok_or_else(|| GraphError::UnknownVertex(b.into()))?;
    if ia == ib {
        return Err(GraphError::SameVertex(a.into()).into());
    }
    brute_force_filtered(g, |sa, sb| Place::of(ia, sa, sb) == i && Place::of(ib, sa, sb) == j)
}

/// All nine `B_ij` at once, indexed `[place of a][place of b]`.
pub fn intermediate_table(g: &Graph, a: &str, b: &str) -> Result<[[MultiPoly; 3]; 3], InterlaceError> {
    let ia = g.index_of(a).ok_or_else(|| GraphError::UnknownVertex(a.into()))?;
    let ib = g.index_of(b).ok_or_else(|| GraphError::UnknownVertex(b.into()))?;
    if ia == ib {
        return Err(GraphError::SameVertex(a.into()).into());
    }
    let mut parts = brute_force_buckets(g, 9, |sa, sb| {
        Some(3 * Place::of(ia, sa, sb) as usize + Place::of(ib, sa, sb) as usize)
    })?
    .into_iter();
    let mut table: [[MultiPoly; 3]; 3] = Default::default();
    for cell in table.iter_mut().flatten() {
        *cell = parts.next().expect("nine buckets");
    }
    Ok(table)
}

/// `B(G)` truncated at quasi-degree `d`, enumerating only the pairs with
/// `|A ∪ B| <= d`.
pub fn brute_force_b_truncated(g: &Graph, d: u32) -> Result<MultiPoly, InterlaceError> {
    brute_force_filtered(g, |a, b| (a | b).count_ones() <= d)
}

/// A single application of the reduction rules at the top of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// `B(G) = (1 + z_a v + w_a u) B(G - a)` for isolated `a`.
    Isolated(VertexId),
    /// The pivot rule for `b ∈ N(G,a)`.
    Pair(VertexId, VertexId),
}

impl std::fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReductionStep::Isolated(a) => write!(f, "isolated({a})"),
            ReductionStep::Pair(a, b) => write!(f, "pair({a},{b})"),
        }
    }
}

/// Every step applicable to `g`: each isolated vertex, and each ordered
/// adjacent pair.
pub fn valid_steps(g: &Graph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        if g.is_isolated_at(i) {
            out.push(ReductionStep::Isolated(g.vertex(i).clone()));
        }
    }
    for i in 0..g.len() {
        for j in g.neighbors_at(i) {
            out.push(ReductionStep::Pair(g.vertex(i).clone(), g.vertex(j).clone()));
        }
    }
    out
}

/// Index of the name-least vertex satisfying `pred`.
pub(crate) fn least_where(g: &Graph, mut pred: impl FnMut(usize) -> bool) -> Option<usize> {
    (0..g.len()).filter(|&i| pred(i)).min_by(|&i, &j| g.vertex(i).cmp(g.vertex(j)))
}

/// Name-least neighbour of `a`.
pub(crate) fn least_neighbor(g: &Graph, a: usize) -> Option<usize> {
    g.neighbors_at(a).into_iter().min_by(|&i, &j| g.vertex(i).cmp(g.vertex(j)))
}

/// Default step: the name-least isolated vertex if any, otherwise the
/// name-least vertex with a neighbour paired with its name-least neighbour.
fn default_step(g: &Graph) -> Option<(usize, Option<usize>)> {
    if g.is_empty() {
        return None;
    }
    if let Some(a) = least_where(g, |i| g.is_isolated_at(i)) {
        return Some((a, None));
    }
    let a = least_where(g, |_| true).expect("non-empty");
    Some((a, least_neighbor(g, a)))
}

/// How the reduction picks its step in each recursive call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Name-least choices; see [`default_step`].
    Least,
    /// Uniformly random valid step, from a seeded generator.
    Seeded(u64),
}

/// Memoized evaluation of the reduction rules.
///
/// Results are cached per exact labelled graph. The cache is only ever
/// filled with values equal to `B` of the key, so it can be shared across
/// calls and strategies.
pub struct RecursiveB {
    memo: HashMap<Graph, MultiPoly>,
    rng: Option<ChaCha8Rng>,
}

impl Default for RecursiveB {
    fn default() -> Self {
        RecursiveB::new(Strategy::Least)
    }
}

impl RecursiveB {
    pub fn new(strategy: Strategy) -> Self {
        RecursiveB {
            memo: HashMap::new(),
            rng: match strategy {
                Strategy::Least => None,
                Strategy::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
            },
        }
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn eval(&mut self, g: &Graph) -> MultiPoly {
        if let Some(p) = self.memo.get(g) {
            return p.clone();
        }
        let step = match &mut self.rng {
            None => default_step(g),
            Some(rng) => {
                let steps = valid_steps(g);
                steps.choose(rng).map(|s| match s {
                    ReductionStep::Isolated(a) => (g.index_of(a.as_str()).unwrap(), None),
                    ReductionStep::Pair(a, b) => (g.index_of(a.as_str()).unwrap(), g.index_of(b.as_str())),
                })
            }
        };
        let result = match step {
            None => MultiPoly::one(),
            Some((a, None)) => self.isolated_rule(g, a),
            Some((a, Some(b))) => self.pair_rule(g, a, b),
        };
        self.memo.insert(g.clone(), result.clone());
        result
    }

    fn isolated_rule(&mut self, g: &Graph, a: usize) -> MultiPoly {
        let mv = MetaVars::at(g, a);
        let factor = MultiPoly::one() + mv.z_of(g, a) * v() + mv.w_of(g, a) * u();
        factor * self.eval(&g.delete_at(&[a]))
    }

    fn pair_rule(&mut self, g: &Graph, a: usize, b: usize) -> MultiPoly {
        let (ma, mb) = (MetaVars::at(g, a), MetaVars::at(g, b));
        let gab = g.pivot_at(a, b).delete_at(&[a, b]);
        let gaab = g.local_complement_at(a).local_complement_at(b).delete_at(&[a, b]);
        let gb = g.local_complement_at(b);
        let p_ab = self.eval(&gab);
        let p_aab = self.eval(&gaab);
        let p_gb_b = self.eval(&gb.delete_at(&[b]));
        let p_gb_ab = self.eval(&gb.delete_at(&[a, b]));
        let p_a = self.eval(&g.delete_at(&[a]));
        let p_b = self.eval(&g.delete_at(&[b]));
        let p_both = self.eval(&g.delete_at(&[a, b]));
        let u2 = u() * u();
        mb.z_of(g, b) * u2 * (ma.z_of(g, a) * p_ab + ma.w_of(g, a) * p_aab)
            + mb.w_of(g, b) * u() * (p_gb_b - p_gb_ab)
            + p_a
            + p_b
            - p_both
    }

    /// Applies `step` at the top of `g`, then reduces the subgraphs as usual.
    pub fn eval_with_step(&mut self, g: &Graph, step: &ReductionStep) -> Result<MultiPoly, InterlaceError> {
        match step {
            ReductionStep::Isolated(a) => {
                let i = g.index_of(a.as_str()).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
                if !g.is_isolated_at(i) {
                    return Err(InterlaceError::InvalidStep(step.to_string()));
                }
                Ok(self.isolated_rule(g, i))
            }
            ReductionStep::Pair(a, b) => {
                let i = g.index_of(a.as_str()).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
                let j = g.index_of(b.as_str()).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
                if !g.adjacent_at(i, j) {
                    return Err(InterlaceError::InvalidStep(step.to_string()));
                }
                Ok(self.pair_rule(g, i, j))
            }
        }
    }
}

/// `B(G)` by the reduction rules with the default (name-least) choices.
pub fn recursive_b(g: &Graph) -> MultiPoly {
    RecursiveB::default().eval(g)
}

/// `B_1`: `B` with `v := 1`.
pub fn specialize_b1(p: &MultiPoly) -> MultiPoly {
    p.substitute(&Substitution::new().set("v", MultiPoly::one()))
}

/// Rebuilds `B` from `B_1`: each monomial with `u`-exponent `r` and
/// quasi-degree `q` is multiplied by `v^(q - r)`.
pub fn theta(p: &MultiPoly) -> Result<MultiPoly, InterlaceError> {
    let iu = Indeterminate::ordinary("u");
    let iv = Indeterminate::ordinary("v");
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let r = m.exponent(&iu);
        let q = m.quasi_degree();
        if r > q {
            return Err(InterlaceError::ThetaExponent(m.text()));
        }
        out.add_term(m.mul(&Monomial::from_powers([(iv.clone(), q - r)])), c.clone());
    }
    Ok(out)
}

/// `μ`: exchanges `x_a` and `y_a` for every `a` in `t`.
pub fn swap_xy(t: &[VertexId]) -> Substitution {
    t.iter().fold(Substitution::new(), |s, a| {
        s.with(Indeterminate::indexed("x", a.clone()), MultiPoly::indexed("y", a.clone()))
            .with(Indeterminate::indexed("y", a.clone()), MultiPoly::indexed("x", a.clone()))
    })
}
