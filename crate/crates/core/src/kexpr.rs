//! k-expressions: a small term language that builds labelled graphs.
//!
//! ```text
//! expr  := const | add(i,j,expr) | ren(i,j,expr) | '(' expr '+' expr ')'
//! const := int | int 'l'
//! ```
//!
//! `1l` is a looped vertex labelled 1. `add(i,j,e)` joins every vertex
//! labelled `i` to every vertex labelled `j`; `ren(i,j,e)` relabels `i` to
//! `j`; `+` is disjoint union. Unions may also be chained without
//! parentheses (`a + b + c`, left-associative). `#` starts a comment.
//!
//! Vertices are named `v1`, `v2`, ... by left-to-right occurrence of
//! constants.

use std::fmt;

use thiserror::Error;

use crate::gf2::SymBitMatrix;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("add({0},{0},...) joins a label to itself")]
    SelfAdd(u32),
    #[error("label 0 at byte {pos}; labels start at 1")]
    ZeroLabel { pos: usize },
    #[error("label {label} exceeds width {k}")]
    Width { label: u32, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KExpr {
    Const { label: u32, looped: bool },
    Add(u32, u32, Box<KExpr>),
    Ren(u32, u32, Box<KExpr>),
    Union(Box<KExpr>, Box<KExpr>),
}

impl KExpr {
    pub fn constant(label: u32) -> KExpr {
        KExpr::Const { label, looped: false }
    }

    pub fn looped(label: u32) -> KExpr {
        KExpr::Const { label, looped: true }
    }

    pub fn add(i: u32, j: u32, e: KExpr) -> KExpr {
        KExpr::Add(i, j, Box::new(e))
    }

    pub fn ren(i: u32, j: u32, e: KExpr) -> KExpr {
        KExpr::Ren(i, j, Box::new(e))
    }

    pub fn union(l: KExpr, r: KExpr) -> KExpr {
        KExpr::Union(Box::new(l), Box::new(r))
    }

    /// Number of constant occurrences, i.e. vertices of the value.
    pub fn constants(&self) -> usize {
        match self {
            KExpr::Const { .. } => 1,
            KExpr::Add(_, _, e) | KExpr::Ren(_, _, e) => e.constants(),
            KExpr::Union(l, r) => l.constants() + r.constants(),
        }
    }

    /// The same expression with the loop flag of every constant flipped.
    pub fn toggle_loops(&self) -> KExpr {
        match self {
            KExpr::Const { label, looped } => KExpr::Const { label: *label, looped: !looped },
            KExpr::Add(i, j, e) => KExpr::add(*i, *j, e.toggle_loops()),
            KExpr::Ren(i, j, e) => KExpr::ren(*i, *j, e.toggle_loops()),
            KExpr::Union(l, r) => KExpr::union(l.toggle_loops(), r.toggle_loops()),
        }
    }
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KExpr::Const { label, looped } => write!(f, "{label}{}", if *looped { "l" } else { "" }),
            KExpr::Add(i, j, e) => write!(f, "add({i},{j},{e})"),
            KExpr::Ren(i, j, e) => write!(f, "ren({i},{j},{e})"),
            KExpr::Union(l, r) => write!(f, "({l} + {r})"),
        }
    }
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, KExprError> {
        Err(KExprError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), KExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{}`", c as char))
        }
    }

    fn label(&mut self) -> Result<u32, KExprError> {
        self.skip();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected a label");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: u32 = text.parse().map_err(|_| KExprError::Syntax {
            pos: start,
            msg: format!("label `{text}` too large"),
        })?;
        if n == 0 {
            return Err(KExprError::ZeroLabel { pos: start });
        }
        Ok(n)
    }

    fn expr(&mut self) -> Result<KExpr, KExprError> {
        let mut left = self.atom()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let right = self.atom()?;
            left = KExpr::union(left, right);
        }
        Ok(left)
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn unary(&mut self) -> Result<(u32, u32, KExpr), KExprError> {
        self.expect(b'(')?;
        let i = self.label()?;
        self.expect(b',')?;
        let j = self.label()?;
        self.expect(b',')?;
        let e = self.expr()?;
        self.expect(b')')?;
        Ok((i, j, e))
    }

    fn atom(&mut self) -> Result<KExpr, KExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let label = self.label()?;
                let looped = self.src.get(self.pos) == Some(&b'l');
                if looped {
                    self.pos += 1;
                }
                Ok(KExpr::Const { label, looped })
            }
            Some(_) if self.keyword("add") => {
                let (i, j, e) = self.unary()?;
                if i == j {
                    return Err(KExprError::SelfAdd(i));
                }
                Ok(KExpr::add(i, j, e))
            }
            Some(_) if self.keyword("ren") => {
                let (i, j, e) = self.unary()?;
                Ok(KExpr::ren(i, j, e))
            }
            Some(c) => self.fail(format!("unexpected `{}`", c as char)),
            None => self.fail("unexpected end of input"),
        }
    }
}

pub fn parse_kexpr(src: &str) -> Result<KExpr, KExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for KExpr {
    type Err = KExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_kexpr(s)
    }
}

/// Largest label occurring anywhere in `e`, including `add`/`ren` arguments.
pub fn validate_width(e: &KExpr) -> u32 {
    match e {
        KExpr::Const { label, .. } => *label,
        KExpr::Add(i, j, c) | KExpr::Ren(i, j, c) => (*i).max(*j).max(validate_width(c)),
        KExpr::Union(l, r) => validate_width(l).max(validate_width(r)),
    }
}

pub(crate) fn check_width(e: &KExpr, k: u32) -> Result<(), KExprError> {
    let w = validate_width(e);
    if w > k {
        return Err(KExprError::Width { label: w, k });
    }
    Ok(())
}

/// Name of the `i`-th constant occurrence (0-based).
pub fn occurrence_name(i: usize) -> String {
    format!("v{}", i + 1)
}

/// A graph with a label on every vertex and, optionally, a vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: Graph,
    /// Label of each vertex, indexed like `graph.vertices()`.
    pub labels: Vec<u32>,
    pub order: Option<Vec<VertexId>>,
}

impl LabelledGraph {
    pub fn label_of(&self, name: &str) -> Option<u32> {
        self.graph.index_of(name).map(|i| self.labels[i])
    }
}

/// Evaluates `e` as a `k`-graph. With `ordered`, left operands of unions
/// precede right ones in the resulting order.
pub fn eval_kexpr(e: &KExpr, k: u32, ordered: bool) -> Result<LabelledGraph, KExprError> {
    check_width(e, k)?;
    let n = e.constants();
    let mut adj = SymBitMatrix::zeros(n);
    let mut labels = vec![0u32; n];
    let mut next = 0usize;

    // returns the vertex range of the subtree, which is contiguous
    fn walk(e: &KExpr, adj: &mut SymBitMatrix, labels: &mut [u32], next: &mut usize) -> std::ops::Range<usize> {
        match e {
            KExpr::Const { label, looped } => {
                let i = *next;
                *next += 1;
                labels[i] = *label;
                if *looped {
                    adj.set_sym(i, i, true);
                }
                i..i + 1
            }
            KExpr::Add(a, b, c) => {
                let r = walk(c, adj, labels, next);
                for x in r.clone() {
                    for y in r.clone() {
                        if labels[x] == *a && labels[y] == *b {
                            adj.set_sym(x, y, true);
                        }
                    }
                }
                r
            }
            KExpr::Ren(a, b, c) => {
                let r = walk(c, adj, labels, next);
                for l in &mut labels[r.clone()] {
                    if *l == *a {
                        *l = *b;
                    }
                }
                r
            }
            KExpr::Union(l, r) => {
                let a = walk(l, adj, labels, next);
                let b = walk(r, adj, labels, next);
                a.start..b.end
            }
        }
    }
    walk(e, &mut adj, &mut labels, &mut next);
    let names: Vec<VertexId> = (0..n).map(|i| VertexId::from(occurrence_name(i))).collect();
    let graph = Graph::from_parts(names.clone(), adj).expect("occurrence names are distinct");
    Ok(LabelledGraph {
        graph,
        labels,
        order: ordered.then_some(names),
    })
}

/// `add(1,2, ren(2,1, ... add(1,2, (1 + 2)) ...) + 2)`: the complete graph
/// `K_n` as a 2-expression.
pub fn complete_graph_expr(n: usize) -> KExpr {
    assert!(n >= 1);
    let mut e = KExpr::constant(1);
    for _ in 1..n {
        e = KExpr::add(1, 2, KExpr::union(e, KExpr::constant(2)));
        e = KExpr::ren(2, 1, e);
    }
    e
}
