//! Specializations of `B`: `B_{y=0}`, `B_{x=y}`, `q`, `Q`, `B_I` and `I`.
//!
//! Every polynomial is available through its specializing substitution
//! applied to `B`, and through its own reduction rules, which never touch
//! `B`. Tests compare the two.

use std::collections::HashMap;

use super::{brute_force_b, brute_force_filtered, least_neighbor, least_where, u, v, xv, yv, InterlaceError};
use crate::graph::{Graph, GraphError};
use crate::poly::{MultiPoly, Substitution};

fn up() -> MultiPoly {
    MultiPoly::ordinary("u'")
}

fn vp() -> MultiPoly {
    MultiPoly::ordinary("v'")
}

fn one() -> MultiPoly {
    MultiPoly::one()
}

/// `σ = [u := u'-1; v := v'-1; x_a := 1; y_a := 0]`, giving `q`.
pub fn sigma_q() -> Substitution {
    Substitution::new()
        .set("u", up() - one())
        .set("v", vp() - one())
        .family_const("x", one())
        .family_const("y", MultiPoly::zero())
}

/// `τ = [u := 1; v := v'-2; x_a := y_a := 1]`, giving `Q`.
pub fn tau() -> Substitution {
    Substitution::new()
        .set("u", one())
        .set("v", vp() - MultiPoly::constant(2))
        .family_const("x", one())
        .family_const("y", one())
}

/// `[y_a := 0]`.
pub fn sigma_y0() -> Substitution {
    Substitution::new().family_const("y", MultiPoly::zero())
}

/// `σ₌ = [y_a := x_a]`.
pub fn sigma_eq() -> Substitution {
    Substitution::new().family_rename("y", "x")
}

/// `η' = [u := 0]`, giving `B_I`.
pub fn eta_prime() -> Substitution {
    Substitution::new().set("u", MultiPoly::zero())
}

/// `η = [u := 0; x_a := 1]`, taking `B_{x=y}` to `I`.
pub fn eta() -> Substitution {
    Substitution::new().set("u", MultiPoly::zero()).family_const("x", one())
}

/// `ρ = [v := 1; y_a := 0]`.
pub fn rho() -> Substitution {
    Substitution::new().set("v", one()).family_const("y", MultiPoly::zero())
}

type Rule = fn(&mut Memo, &Graph) -> MultiPoly;

/// Memoized recursion keyed by the exact labelled graph.
struct Memo {
    map: HashMap<Graph, MultiPoly>,
    rule: Rule,
}

impl Memo {
    fn new(rule: Rule) -> Self {
        Memo {
            map: HashMap::new(),
            rule,
        }
    }

    fn eval(&mut self, g: &Graph) -> MultiPoly {
        if let Some(p) = self.map.get(g) {
            return p.clone();
        }
        let p = (self.rule)(self, g);
        self.map.insert(g.clone(), p.clone());
        p
    }
}

fn least_looped(g: &Graph) -> Option<usize> {
    least_where(g, |i| g.is_looped_at(i))
}

fn least_isolated(g: &Graph) -> Option<usize> {
    least_where(g, |i| g.is_isolated_at(i))
}

/// Name-least vertex with a neighbour, paired with its name-least neighbour.
fn least_pair(g: &Graph) -> Option<(usize, usize)> {
    let a = least_where(g, |i| !g.neighbors_at(i).is_empty())?;
    Some((a, least_neighbor(g, a)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum By0Method {
    /// `[y_a := 0]` applied to `B`.
    Substitution,
    /// `Σ_A x_A u^{rk(G[A])} v^{n(G[A])}`.
    Direct,
    /// Rules (1)-(4) with the inclusion-exclusion pair rule.
    Recursion,
    /// Rules (1)-(3) with `(x_b x_a u² - 1) B(G^{ab}-a-b) + B(G-a) + B(G^{ab}-b)`.
    RecursionAlt,
}

fn by0_common(m: &mut Memo, g: &Graph, pair: fn(&mut Memo, &Graph, usize, usize) -> MultiPoly) -> MultiPoly {
    if g.is_empty() {
        return one();
    }
    if let Some(a) = least_looped(g) {
        return xv(g, a) * u() * m.eval(&g.local_complement_at(a).delete_at(&[a])) + m.eval(&g.delete_at(&[a]));
    }
    if let Some(a) = least_isolated(g) {
        return (one() + xv(g, a) * v()) * m.eval(&g.delete_at(&[a]));
    }
    let (a, b) = least_pair(g).expect("non-isolated vertex");
    pair(m, g, a, b)
}

fn by0_rule(m: &mut Memo, g: &Graph) -> MultiPoly {
    by0_common(m, g, |m, g, a, b| {
        xv(g, b) * xv(g, a) * u() * u() * m.eval(&g.pivot_at(a, b).delete_at(&[a, b]))
            + m.eval(&g.delete_at(&[a]))
            + m.eval(&g.delete_at(&[b]))
            - m.eval(&g.delete_at(&[a, b]))
    })
}

fn by0_alt_rule(m: &mut Memo, g: &Graph) -> MultiPoly {
    by0_common(m, g, |m, g, a, b| {
        let gab = g.pivot_at(a, b);
        (xv(g, b) * xv(g, a) * u() * u() - one()) * m.eval(&gab.delete_at(&[a, b]))
            + m.eval(&g.delete_at(&[a]))
            + m.eval(&gab.delete_at(&[b]))
    })
}

/// `B_{y=0}(G) = Σ_A x_A u^{rk(G[A])} v^{n(G[A])}`.
pub fn b_y0(g: &Graph, method: By0Method) -> Result<MultiPoly, InterlaceError> {
    Ok(match method {
        By0Method::Substitution => brute_force_b(g)?.substitute(&sigma_y0()),
        By0Method::Direct => brute_force_filtered(g, |_, b| b == 0)?,
        By0Method::Recursion => Memo::new(by0_rule).eval(g),
        By0Method::RecursionAlt => Memo::new(by0_alt_rule).eval(g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BxyMethod {
    Substitution,
    Recursion,
}

fn bxy_rule(m: &mut Memo, g: &Graph) -> MultiPoly {
    if g.is_empty() {
        return one();
    }
    if let Some(a) = least_isolated(g) {
        return (one() + xv(g, a) * (u() + v())) * m.eval(&g.delete_at(&[a]));
    }
    let (a, b) = least_pair(g).expect("non-isolated vertex");
    let gb = g.local_complement_at(b);
    let u2 = u() * u();
    xv(g, a) * xv(g, b) * u2
        * (m.eval(&g.pivot_at(a, b).delete_at(&[a, b]))
            + m.eval(&g.local_complement_at(a).local_complement_at(b).delete_at(&[a, b])))
        + xv(g, b) * u() * (m.eval(&gb.delete_at(&[b])) - m.eval(&gb.delete_at(&[a, b])))
        + m.eval(&g.delete_at(&[a]))
        + m.eval(&g.delete_at(&[b]))
        - m.eval(&g.delete_at(&[a, b]))
}

/// `B_{x=y}(G) = σ₌(B(G))`.
pub fn b_xy(g: &Graph, method: BxyMethod) -> Result<MultiPoly, InterlaceError> {
    Ok(match method {
        BxyMethod::Substitution => brute_force_b(g)?.substitute(&sigma_eq()),
        BxyMethod::Recursion => Memo::new(bxy_rule).eval(g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMethod {
    Substitution,
    /// Rules (q1)-(q3).
    RecursionQ123,
    /// Rules (q1), (q2), (q3').
    RecursionQ3Prime,
}

fn q_common(m: &mut Memo, g: &Graph, pair: fn(&mut Memo, &Graph, usize, usize) -> MultiPoly) -> MultiPoly {
    if let Some(a) = least_looped(g) {
        return (up() - one()) * m.eval(&g.local_complement_at(a).delete_at(&[a])) + m.eval(&g.delete_at(&[a]));
    }
    match least_pair(g) {
        None => vp().pow(g.len() as u32),
        Some((a, b)) => pair(m, g, a, b),
    }
}

fn q_rule(m: &mut Memo, g: &Graph) -> MultiPoly {
    q_common(m, g, |m, g, a, b| {
        let s = up() - one();
        &s * &s * m.eval(&g.pivot_at(a, b).delete_at(&[a, b]))
            + m.eval(&g.delete_at(&[a]))
            + m.eval(&g.delete_at(&[b]))
            - m.eval(&g.delete_at(&[a, b]))
    })
}

fn q_prime_rule(m: &mut Memo, g: &Graph) -> MultiPoly {
    q_common(m, g, |m, g, a, b| {
        let s = up() - one();
        let gab = g.pivot_at(a, b);
        (&s * &s - one()) * m.eval(&gab.delete_at(&[a, b])) + m.eval(&g.delete_at(&[a])) + m.eval(&gab.delete_at(&[b]))
    })
}

/// The interlace polynomial `q(G; u', v') = σ(B(G))`.
pub fn q_poly(g: &Graph, method: QMethod) -> Result<MultiPoly, InterlaceError> {
    Ok(match method {
        QMethod::Substitution => brute_force_b(g)?.substitute(&sigma_q()),
        QMethod::RecursionQ123 => Memo::new(q_rule).eval(g),
        QMethod::RecursionQ3Prime => Memo::new(q_prime_rule).eval(g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BigQMethod {
    Substitution,
    /// Rules (Q1)-(Q3); loop-free graphs only.
    RecursionQ,
}

fn big_q_rule(m: &mut Memo, g: &Graph) -> MultiPoly {
    if g.is_empty() {
        return one();
    }
    if let Some(a) = least_isolated(g) {
        return vp() * m.eval(&g.delete_at(&[a]));
    }
    // a ∈ N(G,b)
    let (b, a) = least_pair(g).expect("non-isolated vertex");
    m.eval(&g.delete_at(&[b])) + m.eval(&g.star_complement_at(b).delete_at(&[b])) + m.eval(&g.pivot_at(a, b).delete_at(&[a]))
}

/// `Q(G; v') = τ(B(G))`.
pub fn big_q_poly(g: &Graph, method: BigQMethod) -> Result<MultiPoly, InterlaceError> {
    match method {
        BigQMethod::Substitution => Ok(brute_force_b(g)?.substitute(&tau())),
        BigQMethod::RecursionQ => {
            if let Some(l) = g.loops().first() {
                return Err(InterlaceError::LoopedGraph(l.to_string()));
            }
            Ok(Memo::new(big_q_rule).eval(g))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiMethod {
    /// `η'` applied to `B`.
    Substitution,
    /// Sum over stable sets.
    Direct,
    /// Rules (I1)-(I4).
    RecursionI1to4,
    /// Rules (I1), (I5), (I6).
    RecursionI5I6,
    /// Rule (I7) while an edge between unlooped vertices exists, then (I5)/(I6).
    RecursionI7,
}

fn isolated_bi_factor(g: &Graph, a: usize) -> MultiPoly {
    let t = if g.is_looped_at(a) { yv(g, a) } else { xv(g, a) };
    one() + t * v()
}

fn bi_rule_1to4(m: &mut Memo, g: &Graph) -> MultiPoly {
    if g.is_empty() {
        return one();
    }
    if let Some(a) = least_isolated(g) {
        return isolated_bi_factor(g, a) * m.eval(&g.delete_at(&[a]));
    }
    let (a, b) = least_pair(g).expect("non-isolated vertex");
    m.eval(&g.delete_at(&[a])) + m.eval(&g.delete_at(&[b])) - m.eval(&g.delete_at(&[a, b]))
}

/// `a` together with `N(G,a)`, as indices.
fn closed_neighborhood(g: &Graph, a: usize) -> Vec<usize> {
    let mut out = g.neighbors_at(a);
    out.push(a);
    out
}

fn apply_i5_i6(m: &mut Memo, g: &Graph, a: usize) -> MultiPoly {
    let t = if g.is_looped_at(a) { yv(g, a) } else { xv(g, a) };
    m.eval(&g.delete_at(&[a])) + t * v() * m.eval(&g.delete_at(&closed_neighborhood(g, a)))
}

fn bi_rule_5_6(m: &mut Memo, g: &Graph) -> MultiPoly {
    match least_where(g, |_| true) {
        None => one(),
        Some(a) => apply_i5_i6(m, g, a),
    }
}

fn least_unlooped_edge(g: &Graph) -> Option<(usize, usize)> {
    let a = least_where(g, |i| !g.is_looped_at(i) && g.neighbors_at(i).iter().any(|&j| !g.is_looped_at(j)))?;
    let b = g
        .neighbors_at(a)
        .into_iter()
        .filter(|&j| !g.is_looped_at(j))
        .min_by(|&i, &j| g.vertex(i).cmp(g.vertex(j)))?;
    Some((a, b))
}

fn i7_terms(m: &mut Memo, g: &Graph, a: usize, b: usize) -> MultiPoly {
    let without_e = g
        .remove_edge(g.vertex(a).as_str(), g.vertex(b).as_str())
        .expect("edge present");
    let mut drop = g.neighbors_at(a);
    drop.extend(g.neighbors_at(b));
    drop.sort_unstable();
    drop.dedup();
    m.eval(&without_e) - xv(g, a) * xv(g, b) * v() * v() * m.eval(&g.delete_at(&drop))
}

fn bi_rule_7(m: &mut Memo, g: &Graph) -> MultiPoly {
    if let Some((a, b)) = least_unlooped_edge(g) {
        return i7_terms(m, g, a, b);
    }
    bi_rule_5_6(m, g)
}

/// `B_I(G) = B(G)[u := 0]`: stable sets `S`, with `x` on unlooped and `y`
/// on looped members, times `v^|S|`.
pub fn b_i(g: &Graph, method: BiMethod) -> Result<MultiPoly, InterlaceError> {
    Ok(match method {
        BiMethod::Substitution => brute_force_b(g)?.substitute(&eta_prime()),
        BiMethod::Direct => stable_sets(g)?
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&i| if g.is_looped_at(i) { yv(g, i) } else { xv(g, i) })
                    .fold(v().pow(s.len() as u32), |acc, t| acc * t)
            })
            .sum(),
        BiMethod::RecursionI1to4 => Memo::new(bi_rule_1to4).eval(g),
        BiMethod::RecursionI5I6 => Memo::new(bi_rule_5_6).eval(g),
        BiMethod::RecursionI7 => Memo::new(bi_rule_7).eval(g),
    })
}

/// One application of (I7) to the edge `a-b`, with `B_I` of the two
/// smaller graphs computed by (I1)-(I4).
pub fn apply_i7(g: &Graph, a: &str, b: &str) -> Result<MultiPoly, InterlaceError> {
    let ia = g.index_of(a).ok_or_else(|| GraphError::UnknownVertex(a.into()))?;
    let ib = g.index_of(b).ok_or_else(|| GraphError::UnknownVertex(b.into()))?;
    if ia == ib || !g.adjacent_at(ia, ib) || g.is_looped_at(ia) || g.is_looped_at(ib) {
        return Err(InterlaceError::NotUnloopedEdge(a.into(), b.into()));
    }
    Ok(i7_terms(&mut Memo::new(bi_rule_1to4), g, ia, ib))
}

/// All stable sets of `g` (no edge between distinct members), as index lists.
pub fn stable_sets(g: &Graph) -> Result<Vec<Vec<usize>>, InterlaceError> {
    if g.len() > 63 {
        return Err(InterlaceError::TooLarge(g.len()));
    }
    let n = g.len();
    let nbr: Vec<u64> = (0..n)
        .map(|i| g.neighbors_at(i).iter().fold(0u64, |acc, &j| acc | 1 << j))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn walk(i: usize, n: usize, nbr: &[u64], used: u64, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(current.clone());
            return;
        }
        walk(i + 1, n, nbr, used, current, out);
        if nbr[i] & used == 0 {
            current.push(i);
            walk(i + 1, n, nbr, used | 1 << i, current, out);
            current.pop();
        }
    }
    walk(0, n, &nbr, 0, &mut current, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IMethod {
    /// `η(B_{x=y})`.
    Substitution,
    /// Count of stable sets by size.
    Direct,
    /// `B_I` by (I1)-(I4), then `x_a, y_a := 1`.
    RecursionI,
}

/// The independence polynomial `I(G, v) = Σ_k s_k v^k`.
pub fn independence_poly(g: &Graph, method: IMethod) -> Result<MultiPoly, InterlaceError> {
    let ones = Substitution::new().family_const("x", one()).family_const("y", one());
    Ok(match method {
        IMethod::Substitution => b_xy(g, BxyMethod::Substitution)?.substitute(&eta()),
        IMethod::Direct => stable_sets(g)?.iter().map(|s| v().pow(s.len() as u32)).sum(),
        IMethod::RecursionI => b_i(g, BiMethod::RecursionI1to4)?.substitute(&ones),
    })
}
