//! Named identity checks over exhaustive and random inputs.
//!
//! Each suite checks one family of properties against independent
//! computations (mostly the brute-force `B`) and stops at the first
//! failure. The CLI `check` verb and the acceptance tests both run them.

use std::collections::HashMap;
use std::fmt::Display;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cwdp::dp_table;
use crate::generate::{all_graphs, all_loop_free_graphs, random_binary_matroid, random_graph, random_kexpr, random_subset};
use crate::graph::{Graph, VertexId};
use crate::interlace::specialize::{
    b_i, b_xy, b_y0, big_q_poly, eta_prime, independence_poly, q_poly, rho, sigma_y0, BiMethod, BigQMethod, BxyMethod,
    By0Method, IMethod, QMethod,
};
use crate::interlace::reconstruct::{reconstruct_graph, reconstruct_loop_free_from_bxy};
use crate::interlace::{
    brute_force_b, brute_force_b_truncated, intermediate_table, specialize_b1, swap_xy, theta, valid_steps, RecursiveB,
    Strategy,
};
use crate::kexpr::eval_kexpr;
use crate::matroid::{collapse, components, sokal_alpha, sokal_z, sub_form_equivalence, Matroid, SetFamily, TutteMethod};
use crate::poly::{Indeterminate, Monomial, MultiPoly, Substitution};

/// Which inputs a suite visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Every graph with at most this many vertices.
    pub exhaustive_n: usize,
    /// How many random inputs (graphs, expressions, matroids or families).
    pub random: usize,
    /// Vertex counts of the random graphs.
    pub random_n: RangeInclusive<usize>,
    pub seed: u64,
}

impl SuiteConfig {
    /// Small enough for interactive use.
    pub fn quick() -> Self {
        SuiteConfig {
            exhaustive_n: 3,
            random: 20,
            random_n: 4..=6,
            seed: 1,
        }
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::quick()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failure: Option<String>,
    /// Values worth showing even when the suite passes.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn render(&self) -> String {
        let mut out = match &self.failure {
            None => format!("PASS {} ({} checks)\n", self.name, self.checks),
            Some(f) => format!("FAIL {} after {} checks: {f}\n", self.name, self.checks),
        };
        for n in &self.notes {
            out.push_str("  ");
            out.push_str(n);
            out.push('\n');
        }
        out
    }
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    run: fn(&SuiteConfig, &mut Tally) -> Result<(), String>,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "oracle", about: "recursive B equals brute-force B", run: oracle },
    Suite { name: "base-cases", about: "B of the empty graph and single vertices, q of an edge", run: base_cases },
    Suite { name: "graph-operations", about: "involutions and commutation rules of local complement and pivot", run: graph_operations },
    Suite { name: "rank-identities", about: "rank drops under local complement and pivot", run: rank_identities },
    Suite { name: "counterexample14", about: "the pivot-difference identity fails on the path c-a-b-d", run: counterexample },
    Suite { name: "pair-parts", about: "the nine parts B_ij of B by the places of an edge a-b", run: pair_parts },
    Suite { name: "exchange-identity", about: "the a/b exchange identity for an edge a-b", run: exchange_identity },
    Suite { name: "pivot-difference", about: "the pivot-difference identity and its y=0 form", run: pivot_difference },
    Suite { name: "positivity", about: "B(G) and B(G)-B(G-a) have positive coefficients", run: positivity },
    Suite { name: "theta-mu", about: "theta recovers B from B1; loop toggling swaps x and y", run: theta_mu },
    Suite { name: "b-y0", about: "four computations of B_{y=0} agree", run: by0 },
    Suite { name: "b-xy", about: "B_{x=y} by recursion, and its invariance under loop toggling", run: bxy },
    Suite { name: "q-rules", about: "q by substitution and by both rule sets", run: q_rules },
    Suite { name: "big-q", about: "Q by substitution and recursion on loop-free graphs", run: big_q },
    Suite { name: "independence", about: "B_I and I by every method", run: independence },
    Suite { name: "reconstruct", about: "graphs read back from rho(B) and from B_{x=y}", run: reconstruct },
    Suite { name: "choice", about: "recursive B does not depend on the reduction step chosen", run: choice },
    Suite { name: "determinism", about: "repeated computations give identical text", run: determinism },
    Suite { name: "cwdp", about: "the k-expression DP equals truncated brute-force B_I", run: cwdp },
    Suite { name: "matroid-partition", about: "basis activity intervals partition the subsets", run: matroid_partition },
    Suite { name: "tutte", about: "Tutte polynomial by rank shift, activities and T-tilde", run: tutte },
    Suite { name: "sub-families", about: "a family is Sub(B) iff its shifted enumerator is positive", run: sub_families },
    Suite { name: "sokal", about: "Sokal's Z specializes to the Tutte polynomial", run: sokal },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn run_suite(suite: &Suite, cfg: &SuiteConfig) -> SuiteReport {
    let mut tally = Tally::default();
    let result = (suite.run)(cfg, &mut tally);
    SuiteReport {
        name: suite.name,
        checks: tally.checks,
        failure: result.err(),
        notes: tally.notes,
    }
}

pub fn run_named(name: &str, cfg: &SuiteConfig) -> Option<SuiteReport> {
    find_suite(name).map(|s| run_suite(s, cfg))
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

#[derive(Default)]
pub struct Tally {
    checks: usize,
    notes: Vec<String>,
}

impl Tally {
    fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(what())
        }
    }

    fn equal(&mut self, left: &MultiPoly, right: &MultiPoly, what: impl FnOnce() -> String) -> Result<(), String> {
        self.ensure(left == right, || format!("{}: {} != {}", what(), left, right))
    }

    fn same_graph(&mut self, left: &Graph, right: &Graph, what: impl FnOnce() -> String) -> Result<(), String> {
        self.ensure(left.same_labelled(right), || format!("{}: {} vs {}", what(), inline(left), inline(right)))
    }
}

fn ok<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn inline(g: &Graph) -> String {
    g.to_text().trim_end().replace('\n', "; ")
}

/// Brute-force `B`, remembered for graphs small enough to recur as
/// subgraphs of many inputs.
#[derive(Default)]
struct Oracle {
    cache: HashMap<Graph, MultiPoly>,
}

impl Oracle {
    const CACHE_BELOW: usize = 5;

    fn b(&mut self, g: &Graph) -> MultiPoly {
        if g.len() >= Self::CACHE_BELOW {
            return brute_force_b(g).expect("suite graphs are small");
        }
        if let Some(p) = self.cache.get(g) {
            return p.clone();
        }
        let p = brute_force_b(g).expect("suite graphs are small");
        self.cache.insert(g.clone(), p.clone());
        p
    }
}

fn rng_for(cfg: &SuiteConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

fn graph_set(cfg: &SuiteConfig, max_exhaustive: usize, loop_free: bool) -> Vec<Graph> {
    let mut rng = rng_for(cfg);
    let mut out = Vec::new();
    for n in 0..=cfg.exhaustive_n.min(max_exhaustive) {
        if loop_free {
            out.extend(all_loop_free_graphs(n));
        } else {
            out.extend(all_graphs(n));
        }
    }
    for _ in 0..cfg.random {
        let n = rng.gen_range(cfg.random_n.clone());
        out.push(random_graph(&mut rng, n, 0.5, if loop_free { 0.0 } else { 0.4 }));
    }
    out
}

fn names(g: &Graph) -> Vec<String> {
    g.vertices().iter().map(|v| v.to_string()).collect()
}

/// Ordered pairs `(a, b)` of adjacent unlooped vertices.
fn unlooped_edges(g: &Graph) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j && g.adjacent_at(i, j) && !g.is_looped_at(i) && !g.is_looped_at(j) {
                out.push((g.vertex(i).to_string(), g.vertex(j).to_string()));
            }
        }
    }
    out
}

fn x(a: &str) -> MultiPoly {
    MultiPoly::indexed("x", a)
}

fn y(a: &str) -> MultiPoly {
    MultiPoly::indexed("y", a)
}

fn u() -> MultiPoly {
    MultiPoly::ordinary("u")
}

fn lc(g: &Graph, a: &str) -> Graph {
    g.local_complement(a).expect("vertex of g")
}

fn pv(g: &Graph, a: &str, b: &str) -> Graph {
    g.pivot(a, b).expect("vertices of g")
}

fn del(g: &Graph, s: &[&str]) -> Graph {
    g.delete(s.iter().copied()).expect("vertices of g")
}

fn oracle(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut rec = RecursiveB::new(Strategy::Least);
    for g in graph_set(cfg, 5, false) {
        let expected = ok(brute_force_b(&g))?;
        t.equal(&rec.eval(&g), &expected, || format!("recursive B of {}", inline(&g)))?;
    }
    Ok(())
}

fn base_cases(_: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let parse = |s: &str| s.parse::<MultiPoly>().expect("literal");
    let empty = Graph::empty();
    let single = Graph::build(&["a"], &[], &[]).expect("literal");
    let looped = Graph::build(&["a"], &["a"], &[]).expect("literal");
    let edge = Graph::build(&["a", "b"], &[], &[("a", "b")]).expect("literal");
    let mut rec = RecursiveB::default();
    for (g, want) in [(&empty, "1"), (&single, "1 + x_a*v + y_a*u"), (&looped, "1 + x_a*u + y_a*v")] {
        t.equal(&ok(brute_force_b(g))?, &parse(want), || format!("brute-force B of {}", inline(g)))?;
        t.equal(&rec.eval(g), &parse(want), || format!("recursive B of {}", inline(g)))?;
    }
    let q_edge = parse("u'^2 - 2*u' + 2*v'");
    for m in [QMethod::Substitution, QMethod::RecursionQ123, QMethod::RecursionQ3Prime] {
        t.equal(&ok(q_poly(&edge, m))?, &q_edge, || format!("q of a-b by {m:?}"))?;
    }
    Ok(())
}

fn graph_operations(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut rng = rng_for(cfg);
    for g in graph_set(cfg, 5, false) {
        let vs = names(&g);
        for a in &vs {
            let ga = lc(&g, a);
            t.same_graph(&lc(&ga, a), &g, || format!("(G^{a})^{a} in {}", inline(&g)))?;
            let xs = random_subset(&mut rng, &g);
            let gx = ok(g.toggle_loops(&xs))?;
            t.same_graph(&lc(&gx, a), &ok(ga.toggle_loops(&xs))?, || format!("(G∇X)^{a}, X={xs:?}, in {}", inline(&g)))?;
            let ys = random_subset(&mut rng, &g);
            let both: Vec<&String> = xs.iter().filter(|v| ys.contains(v)).collect();
            t.same_graph(
                &ok(gx.induced(&ys))?,
                &ok(ok(g.induced(&ys))?.toggle_loops(&both))?,
                || format!("(G∇X)[Y], X={xs:?}, Y={ys:?}, in {}", inline(&g)),
            )?;
            let mut keep = random_subset(&mut rng, &g);
            if !keep.contains(a) {
                keep.push(a.clone());
            }
            t.same_graph(
                &lc(&ok(g.induced(&keep))?, a),
                &ok(ga.induced(&keep))?,
                || format!("G[X]^{a}, X={keep:?}, in {}", inline(&g)),
            )?;
        }
        for a in &vs {
            for b in &vs {
                if a == b || !ok(g.adjacent(a, b))? {
                    continue;
                }
                let gab = pv(&g, a, b);
                t.same_graph(&gab, &pv(&g, b, a), || format!("G^{a}{b} vs G^{b}{a} in {}", inline(&g)))?;
                t.same_graph(&pv(&gab, a, b), &g, || format!("(G^{a}{b})^{a}{b} in {}", inline(&g)))?;

                let ab = lc(&lc(&g, a), b);
                let aba = lc(&ab, a);
                let gabb = lc(&gab, b);
                t.same_graph(&del(&gab, &[a, b]), &del(&aba, &[a, b]), || {
                    format!("G^{a}{b}-{a}-{b} vs ((G^{a})^{b})^{a}-{a}-{b} in {}", inline(&g))
                })?;
                t.same_graph(&del(&gabb, &[a, b]), &del(&ab, &[a, b]), || {
                    format!("(G^{a}{b})^{b}-{a}-{b} vs (G^{a})^{b}-{a}-{b} in {}", inline(&g))
                })?;
                if ok(g.has_loop(a))? == ok(g.has_loop(b))? {
                    let h = |k: &Graph| ok(ok(k.toggle_loops([a.as_str()]))?.swap_names(a, b));
                    t.same_graph(&gab, &h(&aba)?, || format!("G^{a}{b} vs h(((G^{a})^{b})^{a}∇{a}) in {}", inline(&g)))?;
                    t.same_graph(&gabb, &h(&ab)?, || format!("(G^{a}{b})^{b} vs h((G^{a})^{b}∇{a}) in {}", inline(&g)))?;
                }

                let xs = random_subset(&mut rng, &g);
                t.same_graph(
                    &pv(&ok(g.toggle_loops(&xs))?, a, b),
                    &ok(gab.toggle_loops(&xs))?,
                    || format!("(G∇X)^{a}{b}, X={xs:?}, in {}", inline(&g)),
                )?;
                let mut keep = random_subset(&mut rng, &g);
                for v in [a, b] {
                    if !keep.contains(v) {
                        keep.push(v.clone());
                    }
                }
                t.same_graph(
                    &pv(&ok(g.induced(&keep))?, a, b),
                    &ok(gab.induced(&keep))?,
                    || format!("G[X]^{a}{b}, X={keep:?}, in {}", inline(&g)),
                )?;
            }
        }
    }
    Ok(())
}

fn rank_identities(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    for g in graph_set(cfg, 5, false) {
        let vs = names(&g);
        let rk = g.rank();
        for a in &vs {
            if ok(g.has_loop(a))? {
                let r = del(&lc(&g, a), &[a]).rank();
                t.ensure(rk == 1 + r, || format!("rk(G) = 1 + rk(G^{a}-{a}) fails on {}", inline(&g)))?;
            }
        }
        for a in &vs {
            for b in &vs {
                if a == b || !ok(g.adjacent(a, b))? {
                    continue;
                }
                let gab = pv(&g, a, b);
                match (ok(g.has_loop(a))?, ok(g.has_loop(b))?) {
                    (false, false) => {
                        let r = del(&gab, &[a, b]).rank();
                        t.ensure(rk == 2 + r, || format!("rk(G) = 2 + rk(G^{a}{b}-{a}-{b}) fails on {}", inline(&g)))?;
                        let (l, r) = (del(&g, &[a]).rank(), del(&gab, &[a]).rank());
                        t.ensure(l == r, || format!("rk(G-{a}) = rk(G^{a}{b}-{a}) fails on {}", inline(&g)))?;
                    }
                    (true, false) => {
                        let r1 = del(&lc(&lc(&g, a), b), &[a, b]).rank();
                        let r2 = del(&ok(gab.toggle_loops([b.as_str()]))?, &[a]).rank();
                        t.ensure(rk == 2 + r1, || format!("rk(G) = 2 + rk((G^{a})^{b}-{a}-{b}) fails on {}", inline(&g)))?;
                        t.ensure(rk == 1 + r2, || format!("rk(G) = 1 + rk(G^{a}{b}∇{b}-{a}) fails on {}", inline(&g)))?;
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

/// Terms of `p` whose vertex-indexed part is exactly `part`, with that part removed.
fn cofactor(p: &MultiPoly, part: &Monomial) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let indexed = m.retain(Indeterminate::is_indexed);
        if &indexed == part {
            out.add_term(m.retain(|i| !i.is_indexed()), c.clone());
        }
    }
    out
}

fn counterexample(_: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let g = Graph::build(&["a", "b", "c", "d"], &[], &[("c", "a"), ("a", "b"), ("b", "d")]).expect("literal");
    let gab = pv(&g, "a", "b");
    let expected_pivot = Graph::build(&["a", "b", "c", "d"], &[], &[("c", "a"), ("a", "b"), ("b", "d"), ("c", "d")]).expect("literal");
    t.same_graph(&gab, &expected_pivot, || "G^ab should add the edge c-d".into())?;

    let b = |h: &Graph| brute_force_b(h).expect("small graph");
    let left = b(&del(&g, &["a"])) - b(&del(&g, &["a", "b"]));
    let right = b(&del(&gab, &["a"])) - b(&del(&gab, &["a", "b"]));
    t.ensure(left != right, || "(*) unexpectedly holds".into())?;

    let witness = Monomial::from_powers([
        (Indeterminate::indexed("y", "b"), 1),
        (Indeterminate::indexed("y", "c"), 1),
        (Indeterminate::indexed("x", "d"), 1),
    ]);
    let (lc_, rc) = (cofactor(&left, &witness), cofactor(&right, &witness));
    let want_left: MultiPoly = "u^3".parse().expect("literal");
    let want_right: MultiPoly = "u^2*v".parse().expect("literal");
    t.equal(&lc_, &want_left, || "left coefficient of y_b*y_c*x_d".into())?;
    t.equal(&rc, &want_right, || "right coefficient of y_b*y_c*x_d".into())?;
    t.notes.push("(*) B(G-a) - B(G-a-b) = B(G^ab-a) - B(G^ab-a-b) fails for G = c-a-b-d".into());
    t.notes.push(format!("left side has  {}", MultiPoly::term(1, witness.clone()) * lc_));
    t.notes.push(format!("right side has {}", MultiPoly::term(1, witness) * rc));

    let u0 = Substitution::new().set("u", MultiPoly::zero());
    t.equal(&left.substitute(&u0), &right.substitute(&u0), || "(*) after u := 0".into())?;
    t.equal(&left.substitute(&sigma_y0()), &right.substitute(&sigma_y0()), || "(*) after y := 0".into())?;
    t.notes.push("(*) holds after u := 0 and after y_b := 0 for all b".into());
    Ok(())
}

fn pair_parts(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut o = Oracle::default();
    for g in graph_set(cfg, 5, false) {
        let whole = o.b(&g);
        for (a, b) in unlooped_edges(&g) {
            let (a, b) = (a.as_str(), b.as_str());
            let p = ok(intermediate_table(&g, a, b))?;
            let at = |what: &str| format!("{what} for {a}-{b} in {}", inline(&g));
            let total: MultiPoly = p.iter().flatten().cloned().sum();
            t.equal(&total, &whole, || at("sum of B_ij"))?;

            let uu = u() * u();
            let ga = lc(&g, a);
            let gb = lc(&g, b);
            t.equal(&p[0][0], &o.b(&del(&g, &[a, b])), || at("B00"))?;
            t.equal(&p[1][1], &(x(a) * x(b) * &uu * o.b(&del(&pv(&g, a, b), &[a, b]))), || at("B11"))?;
            t.equal(&p[2][0], &(y(a) * u() * o.b(&del(&ga, &[a, b]))), || at("B20"))?;
            t.equal(&p[0][2], &(y(b) * u() * o.b(&del(&gb, &[a, b]))), || at("B02"))?;
            t.equal(&p[1][2], &(x(a) * y(b) * &uu * o.b(&del(&lc(&gb, a), &[a, b]))), || at("B12"))?;
            t.equal(&p[2][1], &(x(b) * y(a) * &uu * o.b(&del(&lc(&ga, b), &[a, b]))), || at("B21"))?;

            t.equal(&o.b(&del(&g, &[a])), &(&p[0][0] + &p[0][1] + &p[0][2]), || at("B(G-a)"))?;
            t.equal(&o.b(&del(&g, &[b])), &(&p[0][0] + &p[1][0] + &p[2][0]), || at("B(G-b)"))?;
            t.equal(&(u() * y(a) * o.b(&del(&ga, &[a]))), &(&p[2][0] + &p[2][1] + &p[2][2]), || at("u y_a B(G^a-a)"))?;
            t.equal(&(u() * y(b) * o.b(&del(&gb, &[b]))), &(&p[0][2] + &p[1][2] + &p[2][2]), || at("u y_b B(G^b-b)"))?;
        }
    }
    Ok(())
}

fn exchange_identity(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut o = Oracle::default();
    for g in graph_set(cfg, 5, false) {
        for (a, b) in unlooped_edges(&g) {
            let (a, b) = (a.as_str(), b.as_str());
            let (ga, gb) = (lc(&g, a), lc(&g, b));
            let side = |o: &mut Oracle, gp: &Graph, p: &str, q: &str| {
                y(p) * (o.b(&del(gp, &[p])) - o.b(&del(gp, &[a, b])) - x(q) * u() * o.b(&del(&lc(gp, q), &[a, b])))
            };
            let left = side(&mut o, &gb, b, a);
            let right = side(&mut o, &ga, a, b);
            t.equal(&left, &right, || format!("exchange identity for {a}-{b} in {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn pivot_difference(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut o = Oracle::default();
    let y0 = |g: &Graph| b_y0(g, By0Method::Direct).expect("small graph");
    for g in graph_set(cfg, 5, false) {
        for (a, b) in unlooped_edges(&g) {
            let (a, b) = (a.as_str(), b.as_str());
            let gab = pv(&g, a, b);
            let left = o.b(&del(&g, &[a])) - o.b(&del(&g, &[a, b])) - o.b(&del(&gab, &[a])) + o.b(&del(&gab, &[a, b]));
            let right = y(b) * u() * (o.b(&del(&lc(&g, b), &[a, b])) - o.b(&del(&lc(&lc(&g, a), b), &[a, b])));
            t.equal(&left, &right, || format!("pivot difference for {a}-{b} in {}", inline(&g)))?;

            let l0 = y0(&del(&g, &[a])) - y0(&del(&g, &[a, b]));
            let r0 = y0(&del(&gab, &[a])) - y0(&del(&gab, &[a, b]));
            t.equal(&l0, &r0, || format!("y=0 pivot difference for {a}-{b} in {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn positivity(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut o = Oracle::default();
    for g in graph_set(cfg, 5, false) {
        let whole = o.b(&g);
        t.ensure(whole.is_positive() && !whole.is_zero(), || format!("B not positive for {}", inline(&g)))?;
        for a in names(&g) {
            let d = &whole - &o.b(&del(&g, &[&a]));
            t.ensure(d.is_positive() && !d.is_zero(), || format!("B(G)-B(G-{a}) not positive for {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn theta_mu(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut o = Oracle::default();
    let mut rng = rng_for(cfg);
    for g in graph_set(cfg, 5, false) {
        let b = o.b(&g);
        t.equal(&ok(theta(&specialize_b1(&b)))?, &b, || format!("theta(B1) for {}", inline(&g)))?;
        let all = names(&g);
        for ts in [random_subset(&mut rng, &g), all] {
            let ids: Vec<VertexId> = ts.iter().map(VertexId::new).collect();
            let toggled = o.b(&ok(g.toggle_loops(&ts))?);
            t.equal(&toggled, &b.substitute(&swap_xy(&ids)), || format!("B(G∇{ts:?}) for {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn by0(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    for g in graph_set(cfg, 5, false) {
        let want = ok(b_y0(&g, By0Method::Substitution))?;
        for m in [By0Method::Direct, By0Method::Recursion, By0Method::RecursionAlt] {
            t.equal(&ok(b_y0(&g, m))?, &want, || format!("B_(y=0) by {m:?} for {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn bxy(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut rng = rng_for(cfg);
    for g in graph_set(cfg, 5, false) {
        let want = ok(b_xy(&g, BxyMethod::Substitution))?;
        t.equal(&ok(b_xy(&g, BxyMethod::Recursion))?, &want, || format!("B_(x=y) by recursion for {}", inline(&g)))?;
        let ts = random_subset(&mut rng, &g);
        let toggled = ok(b_xy(&ok(g.toggle_loops(&ts))?, BxyMethod::Substitution))?;
        t.equal(&toggled, &want, || format!("B_(x=y)(G∇{ts:?}) for {}", inline(&g)))?;
    }
    Ok(())
}

fn q_rules(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    for g in graph_set(cfg, 5, false) {
        let want = ok(q_poly(&g, QMethod::Substitution))?;
        for m in [QMethod::RecursionQ123, QMethod::RecursionQ3Prime] {
            t.equal(&ok(q_poly(&g, m))?, &want, || format!("q by {m:?} for {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn big_q(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    for g in graph_set(cfg, 5, true) {
        let want = ok(big_q_poly(&g, BigQMethod::Substitution))?;
        t.equal(&ok(big_q_poly(&g, BigQMethod::RecursionQ))?, &want, || format!("Q by recursion for {}", inline(&g)))?;
        t.ensure(want.is_positive(), || format!("Q not positive for {}", inline(&g)))?;
        for b in names(&g) {
            if g.neighbors_at(g.index_of(&b).expect("vertex")).is_empty() {
                continue;
            }
            let star = ok(big_q_poly(&del(&ok(g.star_complement(&b))?, &[&b]), BigQMethod::RecursionQ))?;
            let local = ok(big_q_poly(&del(&lc(&g, &b), &[&b]), BigQMethod::Substitution))?;
            t.equal(&star, &local, || format!("Q(G*{b}-{b}) vs Q(G^{b}-{b}) for {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn independence(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    use crate::interlace::specialize::apply_i7;
    for g in graph_set(cfg, 5, false) {
        let want = ok(b_i(&g, BiMethod::Direct))?;
        for m in [BiMethod::Substitution, BiMethod::RecursionI1to4, BiMethod::RecursionI5I6, BiMethod::RecursionI7] {
            t.equal(&ok(b_i(&g, m))?, &want, || format!("B_I by {m:?} for {}", inline(&g)))?;
        }
        for (a, b) in unlooped_edges(&g) {
            t.equal(&ok(apply_i7(&g, &a, &b))?, &want, || format!("one I7 step on {a}-{b} for {}", inline(&g)))?;
        }
        let want = ok(independence_poly(&g, IMethod::Direct))?;
        for m in [IMethod::Substitution, IMethod::RecursionI] {
            t.equal(&ok(independence_poly(&g, m))?, &want, || format!("I by {m:?} for {}", inline(&g)))?;
        }
    }
    Ok(())
}

fn reconstruct(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let v1 = Substitution::new().set("v", MultiPoly::one());
    for n in 0..=cfg.exhaustive_n.min(4) {
        for g in all_graphs(n) {
            let back = ok(reconstruct_graph(&ok(brute_force_b(&g))?.substitute(&rho())))?;
            t.same_graph(&back, &g, || "reconstruction from rho(B)".into())?;
        }
        for g in all_loop_free_graphs(n) {
            let p = ok(b_xy(&g, BxyMethod::Substitution))?.substitute(&v1);
            t.same_graph(&ok(reconstruct_loop_free_from_bxy(&p))?, &g, || "reconstruction from B_(x=y)".into())?;
        }
    }
    Ok(())
}

fn choice(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut o = Oracle::default();
    for n in 0..=cfg.exhaustive_n.min(4) {
        for g in all_graphs(n) {
            let want = o.b(&g);
            for step in valid_steps(&g) {
                let got = ok(RecursiveB::default().eval_with_step(&g, &step))?;
                t.equal(&got, &want, || format!("first step {step} on {}", inline(&g)))?;
            }
        }
    }
    let mut rng = rng_for(cfg);
    for _ in 0..cfg.random {
        let n = rng.gen_range(cfg.random_n.clone());
        let g = random_graph(&mut rng, n, 0.5, 0.4);
        let want = o.b(&g);
        let seed = rng.gen();
        let got = RecursiveB::new(Strategy::Seeded(seed)).eval(&g);
        t.equal(&got, &want, || format!("seeded strategy {seed} on {}", inline(&g)))?;
    }
    Ok(())
}

fn determinism(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    for g in graph_set(cfg, 3, false) {
        let first = RecursiveB::default().eval(&g).canonical_text();
        let again = RecursiveB::default().eval(&g).canonical_text();
        let seeded = RecursiveB::new(Strategy::Seeded(cfg.seed)).eval(&g).canonical_text();
        t.ensure(first == again && first == seeded, || format!("texts differ for {}", inline(&g)))?;
    }
    Ok(())
}

fn cwdp(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let mut rng = rng_for(cfg);
    for i in 0..cfg.random {
        let k = 2 + (i % 2) as u32;
        let constants = rng.gen_range(1..=12);
        let e = random_kexpr(&mut rng, k, constants, 0.3);
        let g = ok(eval_kexpr(&e, k, false))?.graph;
        for d in 0..=4 {
            let (table, stats) = ok(dp_table(&e, k, d))?;
            t.ensure(stats.max_table <= 1 << k, || format!("table of {} entries for k={k} in {e}", stats.max_table))?;
            let got: MultiPoly = table.into_values().sum();
            let want = ok(brute_force_b_truncated(&g, d))?.substitute(&eta_prime());
            t.equal(&got, &want, || format!("DP for {e}, k={k}, d={d}"))?;
        }
    }
    Ok(())
}

/// Graphic matroids of all graphs up to `max_n` vertices, then random binary matroids.
fn matroid_set(cfg: &SuiteConfig, max_n: usize) -> Result<Vec<Matroid>, String> {
    let mut out = Vec::new();
    for n in 0..=cfg.exhaustive_n.min(max_n) {
        for g in all_graphs(n) {
            out.push(ok(Matroid::graphic(n, &graph_edges(&g)))?);
        }
    }
    let mut rng = rng_for(cfg);
    for _ in 0..cfg.random {
        let n = rng.gen_range(0..=6);
        let rows = rng.gen_range(1..=4);
        out.push(random_binary_matroid(&mut rng, n, rows));
    }
    Ok(out)
}

/// Loops and edges of `g` by position, loops as `(i, i)`.
fn graph_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i..g.len() {
            if g.adjacent_at(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
        Some(cur)
    })
}

fn matroid_partition(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    for m in matroid_set(cfg, 4)? {
        let mut hits = vec![0u8; 1 << m.len()];
        for &b in m.bases() {
            let (ia, ea) = ok(m.activities(b))?;
            for s in submasks(ia | ea) {
                hits[((b & !ia) | s) as usize] += 1;
            }
        }
        let bad = hits.iter().position(|&h| h != 1);
        t.ensure(bad.is_none(), || {
            let a = bad.expect("some subset") as u64;
            format!("{} lies in {} activity intervals", m.set_text(a), hits[a as usize])
        })?;
        for a in (0..1u64 << m.len()).step_by(7) {
            let dec = ok(m.activity_interval_decompose(a))?;
            let sane = (dec.basis & !dec.c) | dec.d == a && m.rank_subset(a) == (dec.basis & !dec.c).count_ones() as usize;
            t.ensure(sane, || format!("decomposition of {}", m.set_text(a)))?;
        }
    }
    Ok(())
}

fn tutte(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let k3 = ok(Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2)]))?;
    let want: MultiPoly = "x^2 + x + y".parse().expect("literal");
    for method in [TutteMethod::RankShift, TutteMethod::Activities] {
        t.equal(&k3.tutte_polynomial(method), &want, || format!("T(K3) by {method:?}"))?;
    }
    for m in matroid_set(cfg, 4)? {
        let tt = m.tutte_polynomial(TutteMethod::Activities);
        let what = || format!("matroid with bases {:?}", m.bases().iter().map(|&b| m.set_text(b)).collect::<Vec<_>>());
        t.equal(&m.tutte_polynomial(TutteMethod::RankShift), &tt, || format!("R^- vs activities, {}", what()))?;
        let tilde = m.multivariate_tutte();
        t.equal(&tilde.substitute(&collapse()), &tt, || format!("sigma(T~), {}", what()))?;
        t.ensure(tilde.is_positive() && tt.is_positive(), || format!("positivity, {}", what()))?;
        t.equal(&m.multivariate_rank_tilde().shift_minus(), &tilde, || format!("R~^- vs T~, {}", what()))?;
        t.equal(&m.rhat_polynomial().substitute(&collapse()), &m.rank_polynomial(), || format!("sigma(R^), {}", what()))?;
    }
    Ok(())
}

fn sub_families(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let universe = ["1", "2", "3", "4"];
    for b in 0..16u64 {
        let s = ok(SetFamily::sub(&universe, b))?;
        t.ensure(sub_form_equivalence(&s) == (true, true, true), || format!("Sub of mask {b}"))?;
        t.ensure(s.is_sub_family() == Some(b), || format!("Sub of mask {b} not recognised"))?;
    }
    let mut rng = rng_for(cfg);
    for i in 0..cfg.random {
        // Every fourth family is a Sub(B) with one member perturbed, to hit near misses.
        let bits: u16 = if i % 4 == 0 {
            let b = rng.gen_range(0..16u64);
            let mut f: u16 = submasks(b).fold(0, |acc, s| acc | 1 << s);
            f ^= 1 << rng.gen_range(0..16);
            f
        } else {
            rng.gen()
        };
        let s = ok(SetFamily::new(&universe, (0..16u64).filter(|m| bits >> m & 1 == 1)))?;
        let union = s.members().iter().fold(0, |acc, m| acc | m);
        let truth = !s.members().is_empty() && s.members().len() == 1 << union.count_ones();
        let (one, two, three) = sub_form_equivalence(&s);
        t.ensure(one == truth && two == truth && three == truth, || {
            format!("family {bits:#06x}: truth {truth}, statements ({one}, {two}, {three})")
        })?;
    }
    Ok(())
}

fn sokal(cfg: &SuiteConfig, t: &mut Tally) -> Result<(), String> {
    let xm = MultiPoly::ordinary("x") - MultiPoly::one();
    let ym = MultiPoly::ordinary("y") - MultiPoly::one();
    for g in graph_set(cfg, 4, false) {
        if g.len() > 6 {
            continue;
        }
        let edges = graph_edges(&g);
        let n = g.len();
        let k = components(n, edges.iter().copied());
        let tt = ok(Matroid::graphic(n, &edges))?.tutte_polynomial(TutteMethod::Activities);
        let want = xm.pow(k as u32) * ym.pow(n as u32) * tt;
        let got = sokal_z(n, &edges).substitute(&sokal_alpha());
        t.equal(&got, &want, || format!("alpha(Z) for {}", inline(&g)))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        for (i, s) in SUITES.iter().enumerate() {
            assert!(SUITES[i + 1..].iter().all(|o| o.name != s.name), "{}", s.name);
        }
    }

    #[test]
    fn quick_config_passes_everywhere() {
        for r in run_all(&SuiteConfig::quick()) {
            assert!(r.passed(), "{}", r.render());
            assert!(r.checks > 0, "{}", r.name);
        }
    }

    #[test]
    fn counterexample_reports_witness() {
        let r = run_named("counterexample14", &SuiteConfig::quick()).unwrap();
        let text = r.render();
        assert!(text.contains("u^3"), "{text}");
        assert!(text.contains("u^2*v"), "{text}");
    }

    #[test]
    fn submasks_enumerates_all() {
        assert_eq!(submasks(0b101).collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).count(), 1);
    }
}
