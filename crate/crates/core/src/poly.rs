//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Indeterminates come in two kinds: vertex-indexed ones such as `x_a` or
//! `y_b`, and ordinary ones such as `u`, `v` or `u'`. The quasi-degree of a
//! monomial counts only vertex-indexed occurrences; truncation at `d` keeps
//! the monomials of quasi-degree at most `d`.
//!
//! The canonical text form lists terms by ascending quasi-degree, ties broken
//! by comparing the monomial strings, e.g. `1 + x_a*v + y_a*u`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{is_valid_vertex_name, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid indeterminate tag `{0}`")]
    InvalidTag(String),
}

/// Tags start with a letter and continue with letters, digits or `'`.
pub fn is_valid_tag(tag: &str) -> bool {
    let mut chars = tag.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '\'')
}

/// An indeterminate: `tag` alone (ordinary) or `tag_vertex` (vertex-indexed).
///
/// Ordering: vertex-indexed before ordinary; then by tag; then by vertex name.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Indeterminate {
    tag: Arc<str>,
    vertex: Option<VertexId>,
}

impl Indeterminate {
    pub fn ordinary(tag: &str) -> Self {
        debug_assert!(is_valid_tag(tag), "bad tag {tag}");
        Indeterminate {
            tag: Arc::from(tag),
            vertex: None,
        }
    }

    pub fn indexed(tag: &str, vertex: impl Into<VertexId>) -> Self {
        debug_assert!(is_valid_tag(tag), "bad tag {tag}");
        Indeterminate {
            tag: Arc::from(tag),
            vertex: Some(vertex.into()),
        }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn vertex(&self) -> Option<&VertexId> {
        self.vertex.as_ref()
    }

    pub fn is_indexed(&self) -> bool {
        self.vertex.is_some()
    }

    pub fn name(&self) -> String {
        match &self.vertex {
            Some(v) => format!("{}_{}", self.tag, v),
            None => self.tag.to_string(),
        }
    }
}

impl Ord for Indeterminate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.vertex.is_none(), &self.tag, &self.vertex).cmp(&(other.vertex.is_none(), &other.tag, &other.vertex))
    }
}

impl PartialOrd for Indeterminate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Power product of indeterminates, kept sorted with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    powers: Vec<(Indeterminate, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(ind: Indeterminate) -> Self {
        Monomial { powers: vec![(ind, 1)] }
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Indeterminate, u32)>) -> Self {
        let mut map: BTreeMap<Indeterminate, u32> = BTreeMap::new();
        for (ind, e) in powers {
            *map.entry(ind).or_default() += e;
        }
        Monomial {
            powers: map.into_iter().filter(|(_, e)| *e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(Indeterminate, u32)] {
        &self.powers
    }

    pub fn exponent(&self, ind: &Indeterminate) -> u32 {
        self.powers
            .binary_search_by(|(i, _)| i.cmp(ind))
            .map(|k| self.powers[k].1)
            .unwrap_or(0)
    }

    /// Sum of the exponents of vertex-indexed indeterminates.
    pub fn quasi_degree(&self) -> u32 {
        self.powers
            .iter()
            .filter(|(i, _)| i.is_indexed())
            .map(|(_, e)| e)
            .sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.powers, &other.powers);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { powers: out }
    }

    /// Drops every factor whose indeterminate fails `keep`.
    pub fn retain(&self, mut keep: impl FnMut(&Indeterminate) -> bool) -> Monomial {
        Monomial {
            powers: self.powers.iter().filter(|(i, _)| keep(i)).cloned().collect(),
        }
    }

    /// `x_a*y_b^2*u`, or the empty string for the unit monomial.
    pub fn text(&self) -> String {
        let parts: Vec<String> = self
            .powers
            .iter()
            .map(|(i, e)| if *e == 1 { i.name() } else { format!("{}^{}", i.name(), e) })
            .collect();
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.text())
        }
    }
}

/// Polynomial in Z\[indeterminates\]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(ind: Indeterminate) -> Self {
        MultiPoly::term(1, Monomial::var(ind))
    }

    pub fn ordinary(tag: &str) -> Self {
        MultiPoly::var(Indeterminate::ordinary(tag))
    }

    pub fn indexed(tag: &str, vertex: impl Into<VertexId>) -> Self {
        MultiPoly::var(Indeterminate::indexed(tag, vertex))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &BigInt, m: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(self * other)` truncated at quasi-degree `d`, without forming the
    /// discarded products.
    pub fn mul_truncated(&self, other: &MultiPoly, d: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        let right: Vec<(&Monomial, &BigInt, u32)> = other.terms.iter().map(|(m, c)| (m, c, m.quasi_degree())).collect();
        for (m1, c1) in &self.terms {
            let q1 = m1.quasi_degree();
            if q1 > d {
                continue;
            }
            for (m2, c2, q2) in &right {
                if q1 + q2 <= d {
                    out.add_term(m1.mul(m2), c1 * *c2);
                }
            }
        }
        out
    }

    /// Sum of the monomials of quasi-degree at most `d`.
    pub fn truncate(&self, d: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.quasi_degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_quasi_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::quasi_degree).max()
    }

    /// Every stored coefficient is positive (vacuously true for zero).
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Homomorphic image under `image`; indeterminates mapped to `None` stay.
    pub fn substitute_with(&self, mut image: impl FnMut(&Indeterminate) -> Option<MultiPoly>) -> MultiPoly {
        let mut cache: HashMap<Indeterminate, Option<MultiPoly>> = HashMap::new();
        let mut powers: HashMap<(Indeterminate, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = MultiPoly::constant(c.clone());
            for (ind, e) in m.powers() {
                let img = cache.entry(ind.clone()).or_insert_with(|| image(ind));
                match img {
                    None => kept.push((ind.clone(), *e)),
                    Some(p) => {
                        let pe = powers
                            .entry((ind.clone(), *e))
                            .or_insert_with(|| p.pow(*e));
                        acc = &acc * &*pe;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                continue;
            }
            let rest = Monomial::from_powers(kept);
            for (t, k) in acc.terms {
                out.add_term(t.mul(&rest), k);
            }
        }
        out
    }

    pub fn substitute(&self, s: &Substitution) -> MultiPoly {
        self.substitute_with(|ind| s.image(ind))
    }

    /// Every indeterminate `x` replaced by `x - 1`.
    pub fn shift_minus(&self) -> MultiPoly {
        self.substitute_with(|ind| Some(MultiPoly::var(ind.clone()) - MultiPoly::one()))
    }

    /// Every indeterminate `x` replaced by `x + 1`.
    pub fn shift_plus(&self) -> MultiPoly {
        self.substitute_with(|ind| Some(MultiPoly::var(ind.clone()) + MultiPoly::one()))
    }

    /// Keeps the terms selected by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial, &BigInt) -> bool) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a monomial rewrite to every term; images are merged.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Terms in canonical order: quasi-degree, then monomial text.
    pub fn canonical_terms(&self) -> Vec<(String, &Monomial, &BigInt)> {
        let mut v: Vec<(u32, String, &Monomial, &BigInt)> =
            self.terms.iter().map(|(m, c)| (m.quasi_degree(), m.text(), m, c)).collect();
        v.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        v.into_iter().map(|(_, s, m, c)| (s, m, c)).collect()
    }

    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (text, _, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if text.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&text);
            } else {
                out.push_str(&format!("{mag}*{text}"));
            }
        }
        out
    }

    /// Evaluates to an integer when every indeterminate is bound.
    pub fn eval_i64(&self, value: impl Fn(&Indeterminate) -> Option<i64>) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (ind, e) in m.powers() {
                t *= BigInt::from(value(ind)?).pow(*e);
            }
            total += t;
        }
        Some(total)
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn small_coefficients(&self) -> Option<Vec<i64>> {
        self.terms.values().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = MultiPoly::zero();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        *self += &rhs;
    }
}

impl SubAssign<MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: MultiPoly) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

type FamilyRule = Arc<dyn Fn(&VertexId) -> MultiPoly + Send + Sync>;

/// Replacement rules for indeterminates.
///
/// A rule for a single indeterminate wins over a family rule; a family rule
/// for tag `t` rewrites every `t_a` the same way, as a function of `a`.
#[derive(Clone, Default)]
pub struct Substitution {
    rules: HashMap<Indeterminate, MultiPoly>,
    families: HashMap<Arc<str>, FamilyRule>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn with(mut self, ind: Indeterminate, image: MultiPoly) -> Self {
        self.rules.insert(ind, image);
        self
    }

    /// Ordinary indeterminate `tag := image`.
    pub fn set(self, tag: &str, image: MultiPoly) -> Self {
        self.with(Indeterminate::ordinary(tag), image)
    }

    pub fn with_family(mut self, tag: &str, rule: impl Fn(&VertexId) -> MultiPoly + Send + Sync + 'static) -> Self {
        self.families.insert(Arc::from(tag), Arc::new(rule));
        self
    }

    /// Every `tag_a := image`, the same constant image for each `a`.
    pub fn family_const(self, tag: &str, image: MultiPoly) -> Self {
        self.with_family(tag, move |_| image.clone())
    }

    /// Every `from_a := to_a`.
    pub fn family_rename(self, from: &str, to: &str) -> Self {
        let to: Arc<str> = Arc::from(to);
        self.with_family(from, move |a| MultiPoly::indexed(&to, a.clone()))
    }

    pub fn image(&self, ind: &Indeterminate) -> Option<MultiPoly> {
        if let Some(p) = self.rules.get(ind) {
            return Some(p.clone());
        }
        let v = ind.vertex()?;
        self.families.get(ind.tag()).map(|f| f(v))
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rules: Vec<String> = self.rules.iter().map(|(k, v)| format!("{k}:={v}")).collect();
        rules.sort();
        let mut fams: Vec<String> = self.families.keys().map(|k| format!("{k}_*")).collect();
        fams.sort();
        write!(f, "Substitution[{}; families {}]", rules.join(", "), fams.join(", "))
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'s str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err("expected integer");
        }
        Ok(digits.parse().expect("digits"))
    }

    fn small_integer(&mut self) -> Result<u32, PolyError> {
        let n = self.integer()?;
        match n.to_u32() {
            Some(e) => Ok(e),
            None => self.err("exponent too large"),
        }
    }

    fn factor(&mut self) -> Result<(Indeterminate, u32), PolyError> {
        self.skip_ws();
        let tag = self.take_while(|c| c.is_ascii_alphanumeric() || c == '\'');
        if !is_valid_tag(tag) {
            return self.err(format!("expected indeterminate, got `{tag}`"));
        }
        let ind = if self.src[self.pos..].starts_with('_') {
            self.pos += 1;
            let v = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.');
            if !is_valid_vertex_name(v) {
                return self.err("expected vertex name after `_`");
            }
            Indeterminate::indexed(tag, v)
        } else {
            Indeterminate::ordinary(tag)
        };
        let e = if self.eat('^') { self.small_integer()? } else { 1 };
        Ok((ind, e))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), PolyError> {
        let mut coeff = BigInt::one();
        let mut powers = Vec::new();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.integer()?;
        } else {
            powers.push(self.factor()?);
        }
        while self.eat('*') {
            powers.push(self.factor()?);
        }
        Ok((Monomial::from_powers(powers), coeff))
    }

    fn poly(&mut self) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::zero();
        let mut neg = self.eat('-');
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, if neg { -c } else { c });
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;

    /// Parses `term (('+' | '-') term)*` with
    /// `term := integer ('*' factor)* | factor ('*' factor)*` and
    /// `factor := name ('^' integer)?`.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        Parser { src: s, pos: 0 }.poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
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

    fn v() -> MultiPoly {
        MultiPoly::ordinary("v")
    }

    #[test]
    fn add_examples() {
        let q = p("1 + x_a*v");
        assert_eq!(&q + &MultiPoly::zero(), q);
        assert!((x("a") + (-x("a"))).is_zero());
        assert_eq!(p("1 + x_a*v") + p("y_a*u"), p("1 + x_a*v + y_a*u"));
    }

    #[test]
    fn mul_examples() {
        let q = p("3*x_a*u - 2");
        assert_eq!(&q * &MultiPoly::one(), q);
        assert_eq!(x("a") * x("a"), p("x_a^2"));
        let lhs = (MultiPoly::one() + x("a") * v()) * (MultiPoly::one() + x("b") * v());
        assert_eq!(lhs, p("1 + x_a*v + x_b*v + x_a*x_b*v^2"));
    }

    #[test]
    fn substitute_examples() {
        let b_edge = p("1 + x_a*v + x_b*v + y_a*u + y_b*u + x_a*x_b*u^2 + x_a*y_b*u^2 + y_a*x_b*u^2 + y_a*y_b*u^2");
        assert_eq!(b_edge.substitute(&Substitution::new()), b_edge);
        let sigma = Substitution::new()
            .set("u", p("u' - 1"))
            .set("v", p("v' - 1"))
            .family_const("x", MultiPoly::one())
            .family_const("y", MultiPoly::zero());
        assert_eq!(b_edge.substitute(&sigma), p("u'^2 - 2*u' + 2*v'"));
        let mu = Substitution::new()
            .with(Indeterminate::indexed("x", "a"), y("a"))
            .with(Indeterminate::indexed("y", "a"), x("a"));
        let once = b_edge.substitute(&mu);
        assert_ne!(once, b_edge);
        assert_eq!(once.substitute(&mu), b_edge);
    }

    #[test]
    fn quasi_degree_examples() {
        let m = |s: &str| p(s).terms().next().unwrap().0.clone();
        assert_eq!(m("x_a*y_b*u^3*v").quasi_degree(), 2);
        assert_eq!(m("u^5*v^2").quasi_degree(), 0);
        assert_eq!(m("x_a^2*y_a").quasi_degree(), 3);
    }

    #[test]
    fn truncate_examples() {
        let b = p("1 + x_a*v + y_a*u");
        assert_eq!(b.truncate(100), b);
        assert_eq!(b.truncate(0), MultiPoly::one());
    }

    #[test]
    fn shift_examples() {
        let q = p("x_a*x_b");
        assert_eq!(q.shift_minus(), p("x_a*x_b - x_a - x_b + 1"));
        assert_eq!(q.shift_minus().shift_plus(), q);
        assert_eq!(MultiPoly::one().shift_minus(), MultiPoly::one());
    }

    #[test]
    fn positivity_examples() {
        assert!(MultiPoly::zero().is_positive());
        assert!(!p("u'^2 - 2*u' + 2*v'").is_positive());
        assert!(p("1 + x_a*v + y_a*u").is_positive());
    }

    #[test]
    fn canonical_text_examples() {
        let b = MultiPoly::one() + x("a") * v() + y("a") * u();
        assert_eq!(b.canonical_text(), "1 + x_a*v + y_a*u");
        assert_eq!(MultiPoly::zero().canonical_text(), "0");
        assert_eq!(p("2*v' + u'^2 - 2*u'").canonical_text(), "-2*u' + u'^2 + 2*v'");
        assert_eq!(p("-x_b").canonical_text(), "-x_b");
        assert_eq!(p("3*x_a*x_b*u^2 + x_a*x_b*u").canonical_text(), "x_a*x_b*u + 3*x_a*x_b*u^2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("1 +".parse::<MultiPoly>(), Err(PolyError::Parse { .. })));
        assert!(matches!("x_".parse::<MultiPoly>(), Err(PolyError::Parse { .. })));
        assert!(matches!("2 x".parse::<MultiPoly>(), Err(PolyError::Parse { .. })));
        assert!(matches!("_a".parse::<MultiPoly>(), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn parse_merges_similar_monomials() {
        assert_eq!(p("x_a*u + u*x_a"), p("2*x_a*u"));
        assert_eq!(p("x_a - x_a"), MultiPoly::zero());
        assert_eq!(p("x_v10*x_v2"), x("v10") * x("v2"));
    }

    #[test]
    fn big_coefficients_stay_exact() {
        let two = MultiPoly::constant(2);
        let big = two.pow(100);
        assert_eq!(big.canonical_text(), "1267650600228229401496703205376");
        let q = (MultiPoly::one() + x("a")).pow(40);
        assert_eq!(q.eval_i64(|_| Some(1)).unwrap(), BigInt::from(2).pow(40));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_ind() -> impl Strategy<Value = Indeterminate> {
            prop_oneof![
                prop::sample::select(vec!["u", "v"]).prop_map(Indeterminate::ordinary),
                (prop::sample::select(vec!["x", "y"]), prop::sample::select(vec!["a", "b", "c"]))
                    .prop_map(|(t, a)| Indeterminate::indexed(t, a)),
            ]
        }

        pub(super) fn arb_poly() -> impl Strategy<Value = MultiPoly> {
            prop::collection::vec(
                (-5i64..=5, prop::collection::vec((arb_ind(), 1u32..3), 0..3)),
                0..5,
            )
            .prop_map(|terms| {
                MultiPoly::from_terms(
                    terms
                        .into_iter()
                        .map(|(c, pw)| (Monomial::from_powers(pw), BigInt::from(c))),
                )
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            }

            #[test]
            fn text_round_trip(a in arb_poly()) {
                prop_assert_eq!(a.canonical_text().parse::<MultiPoly>().unwrap(), a);
            }

            #[test]
            fn truncation_laws(a in arb_poly(), b in arb_poly(), d in 0u32..5) {
                prop_assert_eq!((&a + &b).truncate(d), a.truncate(d) + b.truncate(d));
                prop_assert_eq!((&a * &b).truncate(d), (a.truncate(d) * b.truncate(d)).truncate(d));
                prop_assert_eq!(a.mul_truncated(&b, d), (&a * &b).truncate(d));
            }

            #[test]
            fn substitution_is_a_homomorphism(a in arb_poly(), b in arb_poly(), img in arb_poly()) {
                let s = Substitution::new()
                    .set("u", img.clone())
                    .family_rename("x", "y")
                    .family_const("y", img);
                prop_assert_eq!((&a + &b).substitute(&s), a.substitute(&s) + b.substitute(&s));
                prop_assert_eq!((&a * &b).substitute(&s), a.substitute(&s) * b.substitute(&s));
            }

            #[test]
            fn shifts_are_inverse(a in arb_poly()) {
                prop_assert_eq!(a.shift_minus().shift_plus(), a.clone());
                prop_assert_eq!(a.shift_plus().shift_minus(), a);
            }
        }
    }
}
