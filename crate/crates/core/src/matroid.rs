//! Ordered matroids given by their bases, basis activities, and the rank,
//! Tutte and activity-based multivariate Tutte polynomials.
//!
//! Subsets of the ground set are `u64` masks: bit `i` is the `i`-th element
//! in ground order, so at most 64 elements are supported. Element tokens
//! index the indeterminates `x_e`, `y_e`.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{is_valid_vertex_name, parse_graph, GraphError, GraphFile};
use crate::poly::{Indeterminate, Monomial, MultiPoly, Substitution};

pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("invalid element token `{0}`")]
    InvalidElement(String),
    #[error("at most {MAX_ELEMENTS} elements are supported, got {0}")]
    TooLarge(usize),
    #[error("the basis family is empty")]
    NoBases,
    #[error("bases {0} and {1} have different sizes")]
    NotEquicardinal(String, String),
    #[error("exchange fails: removing {e} from {b1} admits no replacement from {b2}")]
    Exchange { b1: String, b2: String, e: String },
    #[error("{0} is not a basis")]
    NotABasis(String),
    #[error("`{0}` lies in the basis")]
    InBasis(String),
    #[error("`{0}` does not lie in the basis")]
    NotInBasis(String),
    #[error("{0} lies in {1} activity intervals")]
    Integrity(String, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot read `{0}`: {1}")]
    Io(String, String),
}

/// Where a matroid came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Explicit,
    /// Cycle matroid of a graph; element `i` is the `i`-th edge (or loop).
    Graphic { edges: Vec<(String, String)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: Vec<String>,
    /// Sorted, duplicate-free.
    bases: Vec<u64>,
    rank: usize,
    source: Source,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

/// Every `u64` mask below `full` that is a subset of it.
fn subsets(full: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
        Some(cur)
    })
}

impl Matroid {
    /// Builds and validates a matroid from its bases.
    pub fn from_bases<S: AsRef<str>>(ground: &[S], bases: &[Vec<S>]) -> Result<Matroid, MatroidError> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        check_ground(&ground)?;
        let mut masks = Vec::new();
        for b in bases {
            let mut m = 0u64;
            for e in b {
                let i = ground
                    .iter()
                    .position(|g| g == e.as_ref())
                    .ok_or_else(|| MatroidError::UnknownElement(e.as_ref().to_string()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        Matroid::from_masks(ground, masks, Source::Explicit)
    }

    fn from_masks(ground: Vec<String>, mut bases: Vec<u64>, source: Source) -> Result<Matroid, MatroidError> {
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(MatroidError::NoBases);
        };
        let mut m = Matroid {
            ground,
            rank: first.count_ones() as usize,
            bases,
            source,
        };
        for &b in &m.bases {
            if b.count_ones() != first.count_ones() {
                return Err(MatroidError::NotEquicardinal(m.set_text(first), m.set_text(b)));
            }
        }
        for &b1 in &m.bases {
            for &b2 in &m.bases {
                for e in bits(b1 & !b2) {
                    let ok = bits(b2 & !b1).any(|f| m.is_basis((b1 & !(1 << e)) | 1 << f));
                    if !ok {
                        return Err(MatroidError::Exchange {
                            b1: m.set_text(b1),
                            b2: m.set_text(b2),
                            e: m.ground[e].clone(),
                        });
                    }
                }
            }
        }
        m.bases.shrink_to_fit();
        Ok(m)
    }

    /// Cycle matroid: elements are `edges` in order (pairs of equal vertices
    /// are loops), named `e1, e2, ...`. Bases are the spanning forests.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid, MatroidError> {
        if edges.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(edges.len()));
        }
        let ground: Vec<String> = (1..=edges.len()).map(|i| format!("e{i}")).collect();
        let forest = |mask: u64| -> Option<usize> {
            let mut uf = UnionFind::new(vertices);
            for i in bits(mask) {
                if !uf.union(edges[i].0, edges[i].1) {
                    return None;
                }
            }
            Some(mask.count_ones() as usize)
        };
        let r = vertices - components(vertices, edges.iter().copied());
        let bases: Vec<u64> = subsets(full_mask(edges.len()))
            .filter(|&m| m.count_ones() as usize == r && forest(m).is_some())
            .collect();
        let names = edges.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        Matroid::from_masks(ground, bases, Source::Graphic { edges: names })
    }

    /// Cycle matroid of a parsed graph file, elements in file order.
    pub fn from_graph_file(file: &GraphFile) -> Result<Matroid, MatroidError> {
        let g = &file.graph;
        let edges: Vec<(usize, usize)> = file
            .edge_order
            .iter()
            .map(|(a, b)| (g.index_of(a.as_str()).expect("parsed"), g.index_of(b.as_str()).expect("parsed")))
            .collect();
        let mut m = Matroid::graphic(g.len(), &edges)?;
        m.source = Source::Graphic {
            edges: file.edge_order.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        };
        Ok(m)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    /// `r(M)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn full(&self) -> u64 {
        full_mask(self.len())
    }

    pub fn is_basis(&self, mask: u64) -> bool {
        self.bases.binary_search(&mask).is_ok()
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        self.bases.iter().any(|&b| mask & !b == 0)
    }

    /// Size of a maximal independent subset of `a`.
    pub fn rank_subset(&self, a: u64) -> usize {
        self.bases.iter().map(|&b| (a & b).count_ones() as usize).max().unwrap_or(0)
    }

    /// `n(A) = |A| - r(A)`.
    pub fn nullity(&self, a: u64) -> usize {
        a.count_ones() as usize - self.rank_subset(a)
    }

    pub fn mask_of<S: AsRef<str>>(&self, elems: &[S]) -> Result<u64, MatroidError> {
        let mut m = 0;
        for e in elems {
            m |= 1 << self.index_of(e.as_ref())?;
        }
        Ok(m)
    }

    fn index_of(&self, e: &str) -> Result<usize, MatroidError> {
        self.ground
            .iter()
            .position(|g| g == e)
            .ok_or_else(|| MatroidError::UnknownElement(e.to_string()))
    }

    pub fn elements(&self, mask: u64) -> Vec<&str> {
        bits(mask).map(|i| self.ground[i].as_str()).collect()
    }

    /// `{a b c}` in ground order.
    pub fn set_text(&self, mask: u64) -> String {
        format!("{{{}}}", self.elements(mask).join(" "))
    }

    fn require_basis(&self, b: u64) -> Result<(), MatroidError> {
        if !self.is_basis(b) {
            return Err(MatroidError::NotABasis(self.set_text(b)));
        }
        Ok(())
    }

    /// `{e} ∪ {f ∈ b : b - f + e is a basis}`.
    pub fn fundamental_cycle(&self, b: u64, e: usize) -> Result<u64, MatroidError> {
        self.require_basis(b)?;
        if b >> e & 1 == 1 {
            return Err(MatroidError::InBasis(self.ground[e].clone()));
        }
        Ok(bits(b).filter(|&f| self.is_basis((b & !(1 << f)) | 1 << e)).fold(1 << e, |acc, f| acc | 1 << f))
    }

    /// `{x} ∪ {e ∉ b : b - x + e is a basis}`.
    pub fn fundamental_cocycle(&self, b: u64, x: usize) -> Result<u64, MatroidError> {
        self.require_basis(b)?;
        if b >> x & 1 == 0 {
            return Err(MatroidError::NotInBasis(self.ground[x].clone()));
        }
        Ok(bits(self.full() & !b)
            .filter(|&e| self.is_basis((b & !(1 << x)) | 1 << e))
            .fold(1 << x, |acc, e| acc | 1 << e))
    }

    /// `(IA(b), EA(b))`: basis elements least in their fundamental cocycle,
    /// and other elements least in their fundamental cycle.
    pub fn activities(&self, b: u64) -> Result<(u64, u64), MatroidError> {
        self.require_basis(b)?;
        let least = |set: u64, i: usize| set.trailing_zeros() as usize == i;
        let mut ia = 0;
        for x in bits(b) {
            if least(self.fundamental_cocycle(b, x)?, x) {
                ia |= 1 << x;
            }
        }
        let mut ea = 0;
        for e in bits(self.full() & !b) {
            if least(self.fundamental_cycle(b, e)?, e) {
                ea |= 1 << e;
            }
        }
        Ok((ia, ea))
    }

    fn monomial(&self, tag: &str, mask: u64) -> Monomial {
        Monomial::from_powers(bits(mask).map(|i| (Indeterminate::indexed(tag, self.ground[i].as_str()), 1)))
    }

    /// `R(M) = Σ_A x^{r(M)-r(A)} y^{n(A)}`.
    pub fn rank_polynomial(&self) -> MultiPoly {
        let (x, y) = (Indeterminate::ordinary("x"), Indeterminate::ordinary("y"));
        let mut out = MultiPoly::zero();
        for a in subsets(self.full()) {
            let r = self.rank_subset(a);
            let m = Monomial::from_powers([(x.clone(), (self.rank - r) as u32), (y.clone(), (a.count_ones() as usize - r) as u32)]);
            out.add_term(m, BigInt::from(1));
        }
        out
    }

    pub fn tutte_polynomial(&self, method: TutteMethod) -> MultiPoly {
        match method {
            TutteMethod::RankShift => self.rank_polynomial().shift_minus(),
            TutteMethod::Activities => {
                let (x, y) = (Indeterminate::ordinary("x"), Indeterminate::ordinary("y"));
                let mut out = MultiPoly::zero();
                for &b in &self.bases {
                    let (ia, ea) = self.activities(b).expect("b is a basis");
                    let m = Monomial::from_powers([(x.clone(), ia.count_ones()), (y.clone(), ea.count_ones())]);
                    out.add_term(m, BigInt::from(1));
                }
                out
            }
        }
    }

    /// `T̃(M) = Σ_B x_{IA(B)} y_{EA(B)}`.
    pub fn multivariate_tutte(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for &b in &self.bases {
            let (ia, ea) = self.activities(b).expect("b is a basis");
            out.add_term(self.monomial("x", ia).mul(&self.monomial("y", ea)), BigInt::from(1));
        }
        out
    }

    /// `R̃(M) = Σ_B Enum_x(Sub(IA(B))) · Enum_y(Sub(EA(B)))`.
    pub fn multivariate_rank_tilde(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for &b in &self.bases {
            let (ia, ea) = self.activities(b).expect("b is a basis");
            for c in subsets(ia) {
                for d in subsets(ea) {
                    out.add_term(self.monomial("x", c).mul(&self.monomial("y", d)), BigInt::from(1));
                }
            }
        }
        out
    }

    /// `(Z, C, D)` for `a`: `Z` the greedy maximal independent subset of `a`,
    /// `C` the greedy completion of `Z` to a basis from outside `a`, `D = a - Z`.
    pub fn rhat_triple(&self, a: u64) -> (u64, u64, u64) {
        let mut z = 0;
        for e in bits(a) {
            if self.is_independent(z | 1 << e) {
                z |= 1 << e;
            }
        }
        let mut c = 0;
        for e in bits(self.full() & !a) {
            if self.is_independent(z | c | 1 << e) {
                c |= 1 << e;
            }
        }
        (z, c, a & !z)
    }

    /// `R̂(M) = Σ_A x_C y_D`.
    pub fn rhat_polynomial(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for a in subsets(self.full()) {
            let (_, c, d) = self.rhat_triple(a);
            out.add_term(self.monomial("x", c).mul(&self.monomial("y", d)), BigInt::from(1));
        }
        out
    }

    /// The unique basis `B` with `B - IA(B) ⊆ a ⊆ B ∪ EA(B)`, with `C = B - a`
    /// and `D = a - B`.
    pub fn activity_interval_decompose(&self, a: u64) -> Result<Decomposition, MatroidError> {
        if a & !self.full() != 0 {
            return Err(MatroidError::UnknownElement(format!("bit {}", (a & !self.full()).trailing_zeros())));
        }
        let mut found = Vec::new();
        for &b in &self.bases {
            let (ia, ea) = self.activities(b)?;
            if (b & !ia) & !a == 0 && a & !(b | ea) == 0 {
                found.push(Decomposition {
                    basis: b,
                    c: b & !a,
                    d: a & !b,
                });
            }
        }
        match found.as_slice() {
            [one] => Ok(*one),
            _ => Err(MatroidError::Integrity(self.set_text(a), found.len())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub basis: u64,
    pub c: u64,
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TutteMethod {
    /// `R(M)` with every indeterminate shifted by `-1`.
    RankShift,
    /// `Σ_B x^{|IA(B)|} y^{|EA(B)|}`.
    Activities,
}

/// `σ`: every `x_e := x`, every `y_e := y`.
pub fn collapse() -> Substitution {
    Substitution::new()
        .family_const("x", MultiPoly::ordinary("x"))
        .family_const("y", MultiPoly::ordinary("y"))
}

fn check_ground(ground: &[String]) -> Result<(), MatroidError> {
    if ground.len() > MAX_ELEMENTS {
        return Err(MatroidError::TooLarge(ground.len()));
    }
    let mut seen = BTreeSet::new();
    for e in ground {
        if !is_valid_vertex_name(e) {
            return Err(MatroidError::InvalidElement(e.clone()));
        }
        if !seen.insert(e) {
            return Err(MatroidError::DuplicateElement(e.clone()));
        }
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Merges the classes of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Number of connected components of `(0..n, edges)`.
pub fn components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::new(n);
    let mut k = n;
    for (a, b) in edges {
        if uf.union(a, b) {
            k -= 1;
        }
    }
    k
}

/// Sokal's `Z(G) = Σ_{A ⊆ E} u^{k(A)} Π_{e∈A} v_e`, edges named `e1, e2, ...`.
pub fn sokal_z(n: usize, edges: &[(usize, usize)]) -> MultiPoly {
    assert!(edges.len() < 64);
    let u = Indeterminate::ordinary("u");
    let mut out = MultiPoly::zero();
    for a in subsets(full_mask(edges.len())) {
        let k = components(n, bits(a).map(|i| edges[i]));
        let m = Monomial::from_powers(
            bits(a)
                .map(|i| (Indeterminate::indexed("v", format!("e{}", i + 1)), 1))
                .chain([(u.clone(), k as u32)]),
        );
        out.add_term(m, BigInt::from(1));
    }
    out
}

/// `α = [u := (x-1)(y-1); v_e := y-1]`.
pub fn sokal_alpha() -> Substitution {
    let xm = MultiPoly::ordinary("x") - MultiPoly::one();
    let ym = MultiPoly::ordinary("y") - MultiPoly::one();
    Substitution::new().set("u", &xm * &ym).family_const("v", ym)
}

/// A family of subsets of a fixed universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Vec<String>,
    members: BTreeSet<u64>,
}

impl SetFamily {
    pub fn new<S: AsRef<str>>(universe: &[S], members: impl IntoIterator<Item = u64>) -> Result<SetFamily, MatroidError> {
        let universe: Vec<String> = universe.iter().map(|s| s.as_ref().to_string()).collect();
        check_ground(&universe)?;
        let full = full_mask(universe.len());
        let members: BTreeSet<u64> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|&&m| m & !full != 0) {
            return Err(MatroidError::UnknownElement(format!("bit {}", (bad & !full).trailing_zeros())));
        }
        Ok(SetFamily { universe, members })
    }

    /// `Sub(b)`: every subset of `b`.
    pub fn sub<S: AsRef<str>>(universe: &[S], b: u64) -> Result<SetFamily, MatroidError> {
        SetFamily::new(universe, subsets(b))
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    /// `Enum(S) = Σ_{A ∈ S} x_A`.
    pub fn enum_poly(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for &a in &self.members {
            let m = Monomial::from_powers(bits(a).map(|i| (Indeterminate::indexed("x", self.universe[i].as_str()), 1)));
            out.add_term(m, BigInt::from(1));
        }
        out
    }

    /// `Some(b)` iff the family is exactly `Sub(b)`, read off the shifted
    /// enumerating polynomial, which is then the single monomial `x_b`.
    pub fn check_sub_form(&self) -> Option<u64> {
        let shifted = self.enum_poly().shift_minus();
        if shifted.len() != 1 || !shifted.is_positive() {
            return None;
        }
        let (m, c) = shifted.terms().next()?;
        if *c != BigInt::from(1) {
            return None;
        }
        let mut b = 0u64;
        for (ind, e) in m.powers() {
            let i = self.universe.iter().position(|u| Some(u.as_str()) == ind.vertex().map(|v| v.as_str()))?;
            if *e != 1 {
                return None;
            }
            b |= 1 << i;
        }
        Some(b)
    }

    /// Direct test: the family is closed downward and has a single maximal member.
    pub fn is_sub_family(&self) -> Option<u64> {
        let top = self.members.iter().fold(0u64, |acc, &m| acc | m);
        let expected = 1usize.checked_shl(top.count_ones())?;
        (self.members.len() == expected && subsets(top).all(|s| self.members.contains(&s))).then_some(top)
    }
}

/// The three statements of the enumerating-polynomial characterization:
/// `S = Sub(B)`; `Enum(S)^-` is non-zero with positive coefficients;
/// `Enum(S)^- = x_B`.
pub fn sub_form_equivalence(s: &SetFamily) -> (bool, bool, bool) {
    let shifted = s.enum_poly().shift_minus();
    let one = s.is_sub_family().is_some();
    let two = !shifted.is_zero() && shifted.is_positive();
    let three = s.check_sub_form().is_some();
    (one, two, three)
}

/// Parses the matroid text format:
///
/// ```text
/// groundset: 1 2 3
/// bases: {1 2} {1 3} {2 3}
/// ```
///
/// or `groundset-from-graph: <path>`, with the path relative to `base_dir`.
pub fn parse_matroid(text: &str, base_dir: Option<&Path>) -> Result<Matroid, MatroidError> {
    let mut ground: Option<Vec<String>> = None;
    let mut bases: Option<Vec<Vec<String>>> = None;
    let mut graph_path: Option<String> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let parse_err = |msg: String| MatroidError::Parse { line: lineno, msg };
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(format!("expected `key: values`, got `{line}`")))?;
        match key.trim() {
            "groundset" => ground = Some(rest.split_whitespace().map(str::to_string).collect()),
            "bases" => bases = Some(parse_braced_sets(rest).map_err(parse_err)?),
            "groundset-from-graph" => graph_path = Some(rest.trim().to_string()),
            other => return Err(parse_err(format!("unknown key `{other}`"))),
        }
    }
    match (ground, bases, graph_path) {
        (Some(g), Some(b), None) => Matroid::from_bases(&g, &b),
        (None, None, Some(p)) => {
            let path = match base_dir {
                Some(d) => d.join(&p),
                None => Path::new(&p).to_path_buf(),
            };
            let text = std::fs::read_to_string(&path).map_err(|e| MatroidError::Io(path.display().to_string(), e.to_string()))?;
            Matroid::from_graph_file(&parse_graph(&text)?)
        }
        _ => Err(MatroidError::Parse {
            line: 0,
            msg: "expected `groundset:` with `bases:`, or `groundset-from-graph:` alone".into(),
        }),
    }
}

fn parse_braced_sets(s: &str) -> Result<Vec<Vec<String>>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('{').ok_or_else(|| format!("expected `{{` at `{rest}`"))?;
        let close = inner.find('}').ok_or("unclosed `{`")?;
        out.push(inner[..close].split_whitespace().map(str::to_string).collect());
        rest = inner[close + 1..].trim_start();
    }
    Ok(out)
}
