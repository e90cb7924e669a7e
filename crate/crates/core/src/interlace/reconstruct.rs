//! Recovering a graph from a specialization of its interlace polynomial.
//!
//! Only monomials of quasi-degree at most 2 are read.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::InterlaceError;
use crate::graph::{Graph, VertexId};
use crate::poly::{Indeterminate, MultiPoly};

/// Coefficients, by `u`-exponent, of the quasi-degree 1 and 2 monomials in `x`.
struct LowTerms {
    singles: BTreeMap<VertexId, BTreeMap<u32, BigInt>>,
    pairs: BTreeMap<(VertexId, VertexId), BTreeMap<u32, BigInt>>,
}

fn err(msg: impl Into<String>) -> InterlaceError {
    InterlaceError::Reconstruct(msg.into())
}

fn low_terms(p: &MultiPoly) -> Result<LowTerms, InterlaceError> {
    let iu = Indeterminate::ordinary("u");
    let mut out = LowTerms {
        singles: BTreeMap::new(),
        pairs: BTreeMap::new(),
    };
    for (m, c) in p.terms() {
        let q = m.quasi_degree();
        if q == 0 || q > 2 {
            continue;
        }
        let mut xs = Vec::new();
        for (ind, e) in m.powers() {
            match ind.vertex() {
                Some(a) if ind.tag() == "x" && *e == 1 => xs.push(a.clone()),
                Some(_) => return Err(err(format!("unexpected indeterminate in {}", m.text()))),
                None if ind.tag() == "u" => {}
                None => return Err(err(format!("unexpected indeterminate in {}", m.text()))),
            }
        }
        let r = m.exponent(&iu);
        match xs.as_slice() {
            [a] => {
                out.singles.entry(a.clone()).or_default().insert(r, c.clone());
            }
            [a, b] => {
                out.pairs.entry((a.clone(), b.clone())).or_default().insert(r, c.clone());
            }
            _ => unreachable!("quasi-degree is 1 or 2"),
        }
    }
    Ok(out)
}

/// The single `u`-exponent carried with coefficient 1, if that is all there is.
fn single_rank(coeffs: Option<&BTreeMap<u32, BigInt>>, what: &str) -> Result<u32, InterlaceError> {
    match coeffs {
        Some(c) if c.len() == 1 && c.values().all(|k| k.is_one()) => Ok(*c.keys().next().expect("one entry")),
        Some(_) => Err(err(format!("{what}: expected exactly one monomial with coefficient 1"))),
        None => Err(err(format!("{what}: monomial missing"))),
    }
}

fn check_constant(p: &MultiPoly) -> Result<(), InterlaceError> {
    let c = p.terms().find(|(m, _)| m.quasi_degree() == 0).map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero);
    if !c.is_one() {
        return Err(err(format!("constant part is {c}, expected 1")));
    }
    Ok(())
}

fn assemble(vertices: &[VertexId], looped: &[bool], edge: impl Fn(usize, usize) -> bool) -> Result<Graph, InterlaceError> {
    let names: Vec<&str> = vertices.iter().map(|v| v.as_str()).collect();
    let loops: Vec<&str> = (0..names.len()).filter(|&i| looped[i]).map(|i| names[i]).collect();
    let mut edges = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            if edge(i, j) {
                edges.push((names[i], names[j]));
            }
        }
    }
    Ok(Graph::build(&names, &loops, &edges)?)
}

/// Reads `G` back from `ρ(B(G)) = Σ_A x_A u^{rk(G[A])}`.
///
/// A vertex is looped iff `x_a` carries `u^1`. For a pair, with `r` the
/// exponent on `x_a x_b`: two unlooped vertices are adjacent iff `r = 2`,
/// one looped and one unlooped iff `r = 2`, two looped iff `r = 1`.
pub fn reconstruct_graph(p: &MultiPoly) -> Result<Graph, InterlaceError> {
    check_constant(p)?;
    let low = low_terms(p)?;
    let vertices: Vec<VertexId> = low.singles.keys().cloned().collect();
    let mut looped = Vec::new();
    for a in &vertices {
        match single_rank(low.singles.get(a), &format!("x_{a}"))? {
            0 => looped.push(false),
            1 => looped.push(true),
            r => return Err(err(format!("x_{a} carries u^{r}"))),
        }
    }
    let mut rank = BTreeMap::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let key = (vertices[i].clone(), vertices[j].clone());
            let r = single_rank(low.pairs.get(&key), &format!("x_{}*x_{}", key.0, key.1))?;
            let consistent = match (looped[i], looped[j]) {
                (false, false) => r == 0 || r == 2,
                (true, true) => r == 1 || r == 2,
                _ => r == 1 || r == 2,
            };
            if !consistent {
                return Err(err(format!("x_{}*x_{} carries u^{r}", key.0, key.1)));
            }
            rank.insert((i, j), r);
        }
    }
    if low.pairs.keys().any(|(a, b)| !low.singles.contains_key(a) || !low.singles.contains_key(b)) {
        return Err(err("pair monomial over a vertex without a singleton monomial"));
    }
    assemble(&vertices, &looped, |i, j| {
        let r = rank[&(i, j)];
        if looped[i] && looped[j] {
            r == 1
        } else {
            r == 2
        }
    })
}

/// Reads a loop-free `G` back from `B_{x=y}(G)` with `v := 1`.
///
/// The `x_a x_b` part is `u + 3u²` for an edge and `1 + 2u + u²` otherwise.
pub fn reconstruct_loop_free_from_bxy(p: &MultiPoly) -> Result<Graph, InterlaceError> {
    check_constant(p)?;
    let low = low_terms(p)?;
    let vertices: Vec<VertexId> = low.singles.keys().cloned().collect();
    for a in &vertices {
        let c = &low.singles[a];
        let expected: BTreeMap<u32, BigInt> = [(0, BigInt::one()), (1, BigInt::one())].into();
        if *c != expected {
            return Err(err(format!("x_{a} part is not 1 + u")));
        }
    }
    let edge_part: BTreeMap<u32, BigInt> = [(1, BigInt::from(1)), (2, BigInt::from(3))].into();
    let non_edge_part: BTreeMap<u32, BigInt> = [(0, BigInt::from(1)), (1, BigInt::from(2)), (2, BigInt::from(1))].into();
    let mut adjacent = BTreeMap::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let key = (vertices[i].clone(), vertices[j].clone());
            match low.pairs.get(&key) {
                Some(c) if *c == edge_part => adjacent.insert((i, j), true),
                Some(c) if *c == non_edge_part => adjacent.insert((i, j), false),
                _ => return Err(err(format!("x_{}*x_{} part matches neither pattern", key.0, key.1))),
            };
        }
    }
    assemble(&vertices, &vec![false; vertices.len()], |i, j| adjacent[&(i, j)])
}

#[cfg(test)]
mod tests {
    use super::super::specialize::{b_xy, rho, BxyMethod};
    use super::super::brute_force_b;
    use super::*;
    use crate::poly::Substitution;

    #[test]
    fn loop_read_from_singleton_exponent() {
        let g = reconstruct_graph(&"1 + x_a*u".parse().unwrap()).unwrap();
        assert!(g.has_loop("a").unwrap());
        let g = reconstruct_graph(&"1 + x_a".parse().unwrap()).unwrap();
        assert!(!g.has_loop("a").unwrap());
    }

    #[test]
    fn round_trip_small_examples() {
        let gs = [
            Graph::build(&["a", "b"], &[], &[("a", "b")]).unwrap(),
            Graph::build(&["a", "b"], &["a", "b"], &[("a", "b")]).unwrap(),
            Graph::build(&["a", "b"], &["a", "b"], &[]).unwrap(),
            Graph::build(&["a", "b", "c"], &["b"], &[("a", "b"), ("b", "c")]).unwrap(),
        ];
        for g in gs {
            let r = reconstruct_graph(&brute_force_b(&g).unwrap().substitute(&rho())).unwrap();
            assert!(r.same_labelled(&g), "{g:?} -> {r:?}");
        }
    }

    #[test]
    fn inconsistent_inputs_rejected() {
        assert!(reconstruct_graph(&"2 + x_a".parse().unwrap()).is_err());
        assert!(reconstruct_graph(&"1 + x_a + x_b".parse().unwrap()).is_err());
        assert!(reconstruct_graph(&"1 + x_a + x_b + x_a*x_b*u".parse().unwrap()).is_err());
    }

    #[test]
    fn loop_free_from_bxy() {
        let g = Graph::build(&["a", "b", "c"], &[], &[("a", "b")]).unwrap();
        let p = b_xy(&g, BxyMethod::Substitution).unwrap().substitute(&Substitution::new().set("v", MultiPoly::one()));
        assert!(reconstruct_loop_free_from_bxy(&p).unwrap().same_labelled(&g));
    }
}
