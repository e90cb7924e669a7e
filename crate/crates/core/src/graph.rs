//! Looped simple graphs with named vertices.
//!
//! A [`Graph`] is an ordered list of vertex names plus a symmetric GF(2)
//! adjacency matrix; diagonal bits are loops. Every operation keeps vertex
//! names, and deletions keep the relative order of the survivors, so
//! polynomials indexed by vertex names line up across `G`, `G - a`, `G^{ab}`
//! and the other graphs produced during a reduction.

use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf2::SymBitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("vertex name collision on `{0}` in disjoint union")]
    NameCollision(String),
    #[error("operation needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error("`{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Stable vertex name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(name: impl AsRef<str>) -> Self {
        VertexId(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Vertex names are non-empty runs of ASCII letters, digits, `_` and `.`.
pub fn is_valid_vertex_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(Arc::from(s))
    }
}

/// Loop status of an adjacent pair `(a, b)`: `a-b`, `a^l-b`, `a-b^l` or `a^l-b^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacentPair {
    pub a_looped: bool,
    pub b_looped: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<VertexId>,
    adj: SymBitMatrix,
}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            vertices: Vec::new(),
            adj: SymBitMatrix::zeros(0),
        }
    }

    /// Edgeless, loopless graph on the given names.
    pub fn with_vertices<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        let vertices: Vec<VertexId> = names.into_iter().map(|s| VertexId::new(s)).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !is_valid_vertex_name(v.as_str()) {
                return Err(GraphError::InvalidName(v.to_string()));
            }
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
        }
        let n = vertices.len();
        Ok(Graph {
            vertices,
            adj: SymBitMatrix::zeros(n),
        })
    }

    /// Convenience constructor. An edge `(x, x)` is a loop.
    pub fn build(vertices: &[&str], loops: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices(vertices.iter().copied())?;
        for l in loops {
            let i = g.index(l)?;
            g.adj.set_sym(i, i, true);
        }
        for (a, b) in edges {
            let (i, j) = (g.index(a)?, g.index(b)?);
            g.adj.set_sym(i, j, true);
        }
        Ok(g)
    }

    pub fn from_parts(vertices: Vec<VertexId>, adj: SymBitMatrix) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices(vertices.iter().map(|v| v.as_str()))?;
        if adj.dim() != g.len() {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("adjacency dimension {} does not match {} vertices", adj.dim(), g.len()),
            });
        }
        g.adj = adj;
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &SymBitMatrix {
        &self.adj
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_str() == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    fn index(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    fn indices<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Vec<bool>, GraphError> {
        let mut mask = vec![false; self.len()];
        for s in names {
            mask[self.index(s.as_ref())?] = true;
        }
        Ok(mask)
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    #[inline]
    pub fn is_looped_at(&self, i: usize) -> bool {
        self.adj.get(i, i)
    }

    #[inline]
    pub fn adjacent_at(&self, i: usize, j: usize) -> bool {
        i != j && self.adj.get(i, j)
    }

    pub fn has_loop(&self, name: &str) -> Result<bool, GraphError> {
        Ok(self.is_looped_at(self.index(name)?))
    }

    pub fn adjacent(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        Ok(self.adjacent_at(self.index(a)?, self.index(b)?))
    }

    pub fn loops(&self) -> Vec<VertexId> {
        (0..self.len())
            .filter(|&i| self.is_looped_at(i))
            .map(|i| self.vertices[i].clone())
            .collect()
    }

    /// Non-loop edges as `(earlier, later)` pairs in vertex order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj.get(i, j) {
                    out.push((self.vertices[i].clone(), self.vertices[j].clone()));
                }
            }
        }
        out
    }

    pub fn neighbors_at(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacent_at(i, j)).collect()
    }

    /// N(G,a): the neighbours of `a` other than `a` itself.
    pub fn neighbors(&self, a: &str) -> Result<Vec<VertexId>, GraphError> {
        let i = self.index(a)?;
        Ok(self
            .neighbors_at(i)
            .into_iter()
            .map(|j| self.vertices[j].clone())
            .collect())
    }

    pub fn is_isolated_at(&self, i: usize) -> bool {
        self.adj.off_diagonal_degree(i) == 0
    }

    /// Subgraph induced by the vertices whose mask bit is set.
    pub fn induced_mask(&self, keep: &[bool]) -> Graph {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        Graph {
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj: self
                .adj
                .principal_submatrix(&idx)
                .expect("mask indices are in range"),
        }
    }

    /// `G[S]`, keeping the original relative order.
    pub fn induced<S: AsRef<str>>(&self, s: impl IntoIterator<Item = S>) -> Result<Graph, GraphError> {
        let mask = self.indices(s)?;
        Ok(self.induced_mask(&mask))
    }

    /// `G - S`.
    pub fn delete<S: AsRef<str>>(&self, s: impl IntoIterator<Item = S>) -> Result<Graph, GraphError> {
        let mask = self.indices(s)?;
        let keep: Vec<bool> = mask.iter().map(|m| !m).collect();
        Ok(self.induced_mask(&keep))
    }

    pub fn delete_at(&self, drop: &[usize]) -> Graph {
        let mut keep = vec![true; self.len()];
        for &i in drop {
            keep[i] = false;
        }
        self.induced_mask(&keep)
    }

    /// `G ∇ S`: flip the loop bit of every vertex in `S`.
    pub fn toggle_loops<S: AsRef<str>>(&self, s: impl IntoIterator<Item = S>) -> Result<Graph, GraphError> {
        let mask = self.indices(s)?;
        let mut g = self.clone();
        for (i, _) in mask.iter().enumerate().filter(|(_, m)| **m) {
            g.adj.toggle_sym(i, i);
        }
        Ok(g)
    }

    pub fn toggle_loops_at(&self, idx: &[usize]) -> Graph {
        let mut g = self.clone();
        for &i in idx {
            g.adj.toggle_sym(i, i);
        }
        g
    }

    /// `G^a`: complement every entry, diagonal included, inside N(G,a).
    pub fn local_complement_at(&self, a: usize) -> Graph {
        let nb = self.neighbors_at(a);
        let mut g = self.clone();
        for (p, &i) in nb.iter().enumerate() {
            for &j in &nb[p..] {
                g.adj.toggle_sym(i, j);
            }
        }
        g
    }

    pub fn local_complement(&self, a: &str) -> Result<Graph, GraphError> {
        Ok(self.local_complement_at(self.index(a)?))
    }

    /// `G^{ab}`: flip the entries joining the three neighbourhood classes
    /// N(a)-N(b), N(b)-N(a) and N(a)∩N(b) to each other. Loops on `a`, `b`
    /// and whether `a` and `b` are adjacent play no role.
    pub fn pivot_at(&self, a: usize, b: usize) -> Graph {
        let n = self.len();
        let in_a: Vec<bool> = (0..n).map(|i| self.adjacent_at(a, i)).collect();
        let in_b: Vec<bool> = (0..n).map(|i| self.adjacent_at(b, i)).collect();
        let class = |i: usize| -> u8 {
            match (in_a[i], in_b[i]) {
                (true, false) => 1,
                (false, true) => 2,
                (true, true) => 3,
                (false, false) => 0,
            }
        };
        let mut g = self.clone();
        for i in 0..n {
            if i == a || i == b || class(i) == 0 {
                continue;
            }
            for j in i + 1..n {
                if j == a || j == b {
                    continue;
                }
                let (ci, cj) = (class(i), class(j));
                if cj != 0 && ci != cj {
                    g.adj.toggle_sym(i, j);
                }
            }
        }
        g
    }

    pub fn pivot(&self, a: &str, b: &str) -> Result<Graph, GraphError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        if i == j {
            return Err(GraphError::SameVertex(a.to_string()));
        }
        Ok(self.pivot_at(i, j))
    }

    /// `G * a = G^a ∇ N(G,a)`: complements the non-loop edges inside N(G,a).
    pub fn star_complement_at(&self, a: usize) -> Graph {
        let nb = self.neighbors_at(a);
        self.local_complement_at(a).toggle_loops_at(&nb)
    }

    pub fn star_complement(&self, a: &str) -> Result<Graph, GraphError> {
        Ok(self.star_complement_at(self.index(a)?))
    }

    /// `G ⊕ H`; `self`'s vertices come first.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let names: HashSet<&str> = self.vertices.iter().map(|v| v.as_str()).collect();
        if let Some(v) = other.vertices.iter().find(|v| names.contains(v.as_str())) {
            return Err(GraphError::NameCollision(v.to_string()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        Ok(Graph {
            vertices,
            adj: self.adj.direct_sum(&other.adj),
        })
    }

    /// `G - e` for the edge `e = a-b`; both endpoints stay.
    pub fn remove_edge(&self, a: &str, b: &str) -> Result<Graph, GraphError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        if i == j {
            return Err(GraphError::SameVertex(a.to_string()));
        }
        if !self.adj.get(i, j) {
            return Err(GraphError::NotAdjacent(a.to_string(), b.to_string()));
        }
        let mut g = self.clone();
        g.adj.set_sym(i, j, false);
        Ok(g)
    }

    /// Adds the edge `a-b` (or a loop when `a == b`); no-op if present.
    pub fn add_edge(&self, a: &str, b: &str) -> Result<Graph, GraphError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        let mut g = self.clone();
        g.adj.set_sym(i, j, true);
        Ok(g)
    }

    /// Exchanges the names `a` and `b`, keeping positions.
    pub fn swap_names(&self, a: &str, b: &str) -> Result<Graph, GraphError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        let mut g = self.clone();
        g.vertices.swap(i, j);
        Ok(g)
    }

    /// Loop status of `(a, b)` when they are adjacent, `None` otherwise.
    pub fn classify_pair(&self, a: &str, b: &str) -> Result<Option<AdjacentPair>, GraphError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        if i == j {
            return Err(GraphError::SameVertex(a.to_string()));
        }
        Ok(self.adjacent_at(i, j).then(|| AdjacentPair {
            a_looped: self.is_looped_at(i),
            b_looped: self.is_looped_at(j),
        }))
    }

    pub fn rank(&self) -> usize {
        self.adj.rank()
    }

    pub fn corank(&self) -> usize {
        self.adj.corank()
    }

    /// Equality as labelled graphs, ignoring the order in which vertices are stored.
    pub fn same_labelled(&self, other: &Graph) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| other.index_of(v.as_str()))
            .collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|i| (i..self.len()).all(|j| self.adj.get(i, j) == other.adj.get(map[i], map[j])))
    }

    /// The same graph with vertices stored in name order.
    pub fn sorted_by_name(&self) -> Graph {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]));
        Graph {
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj: self.adj.principal_submatrix(&idx).expect("in range"),
        }
    }

    /// Line-oriented text form; see [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("vertices:");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(v.as_str());
        }
        out.push('\n');
        let loops = self.loops();
        if !loops.is_empty() {
            out.push_str("loops:");
            for v in loops {
                out.push(' ');
                out.push_str(v.as_str());
            }
            out.push('\n');
        }
        let edges = self.edges();
        if !edges.is_empty() {
            out.push_str("edges:");
            for (a, b) in edges {
                out.push_str(&format!(" {a}-{b}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            if self.is_looped_at(i) {
                write!(f, "^l")?;
            }
        }
        write!(f, ";")?;
        for (a, b) in self.edges() {
            write!(f, " {a}-{b}")?;
        }
        write!(f, "}}")
    }
}

/// A parsed graph file. `edge_order` lists every edge and loop in the order
/// it was written (a `loops:` entry `x` is recorded as `(x, x)`).
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub edge_order: Vec<(VertexId, VertexId)>,
}

/// Parses the graph text format:
///
/// ```text
/// # comment
/// vertices: a b c d
/// loops: b d
/// edges: a-b b-c c-d
/// ```
///
/// A loop may also be written as the edge `x-x`. Duplicate edges and loops
/// are rejected.
pub fn parse_graph(text: &str) -> Result<GraphFile, GraphError> {
    let mut names: Vec<String> = Vec::new();
    let mut pending: Vec<(usize, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let (key, rest) = line.split_once(':').ok_or_else(|| GraphError::Parse {
            line: lineno,
            msg: format!("expected `key: values`, got `{line}`"),
        })?;
        let items = rest.split_whitespace();
        match key.trim() {
            "vertices" => names.extend(items.map(str::to_string)),
            "loops" => {
                for v in items {
                    pending.push((lineno, v.to_string(), v.to_string()));
                }
            }
            "edges" => {
                for e in items {
                    let (a, b) = e.split_once('-').ok_or_else(|| GraphError::Parse {
                        line: lineno,
                        msg: format!("edge `{e}` is not of the form a-b"),
                    })?;
                    pending.push((lineno, a.to_string(), b.to_string()));
                }
            }
            other => {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let mut g = Graph::with_vertices(&names)?;
    let mut edge_order = Vec::new();
    for (line, a, b) in pending {
        let i = g.index_of(&a).ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("unknown vertex `{a}`"),
        })?;
        let j = g.index_of(&b).ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("unknown vertex `{b}`"),
        })?;
        if g.adj.get(i, j) {
            return Err(GraphError::Parse {
                line,
                msg: if i == j {
                    format!("duplicate loop on `{a}`")
                } else {
                    format!("duplicate edge `{a}-{b}`")
                },
            });
        }
        g.adj.set_sym(i, j, true);
        edge_order.push((g.vertices[i].clone(), g.vertices[j].clone()));
    }
    Ok(GraphFile { graph: g, edge_order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_cabd() -> Graph {
        Graph::build(&["a", "b", "c", "d"], &[], &[("c", "a"), ("a", "b"), ("b", "d")]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::build(&["a", "b", "c"], &[], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }

    #[test]
    fn induced_and_delete() {
        let g = path_cabd();
        assert_eq!(g.induced(["a", "b", "c", "d"]).unwrap(), g);
        assert!(g.induced(Vec::<&str>::new()).unwrap().is_empty());
        let h = g.induced(["b", "c", "d"]).unwrap();
        assert_eq!(h.vertices(), &["b".into(), "c".into(), "d".into()] as &[VertexId]);
        assert!(h.adjacent("b", "d").unwrap());
        assert!(h.neighbors("c").unwrap().is_empty());
        assert_eq!(h, g.delete(["a"]).unwrap());
        assert_eq!(g.delete(Vec::<&str>::new()).unwrap(), g);
        let two = g.delete(["a", "b"]).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.edges().is_empty());
        assert_eq!(
            g.delete(["z"]),
            Err(GraphError::UnknownVertex("z".into()))
        );
        let single = Graph::build(&["a"], &[], &[]).unwrap();
        assert!(single.delete(["a"]).unwrap().is_empty());
    }

    #[test]
    fn toggle_loops_examples() {
        let g = path_cabd();
        assert_eq!(g.toggle_loops(Vec::<&str>::new()).unwrap(), g);
        let t = g.toggle_loops(["a", "d"]).unwrap();
        assert_eq!(t.toggle_loops(["a", "d"]).unwrap(), g);
        assert_eq!(t.edges(), g.edges());
        let a = Graph::build(&["a"], &[], &[]).unwrap();
        assert_eq!(a.toggle_loops(["a"]).unwrap(), Graph::build(&["a"], &["a"], &[]).unwrap());
    }

    #[test]
    fn local_complement_examples() {
        let iso = Graph::build(&["a", "b"], &["a"], &[]).unwrap();
        assert_eq!(iso.local_complement("a").unwrap(), iso);
        let t = triangle();
        let ta = t.local_complement("a").unwrap();
        let expected = Graph::build(&["a", "b", "c"], &["b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        assert_eq!(ta, expected);
        assert_eq!(ta.local_complement("a").unwrap(), t);
    }

    #[test]
    fn pivot_examples() {
        let g = path_cabd();
        let p = g.pivot("a", "b").unwrap();
        assert_eq!(p, g.add_edge("c", "d").unwrap());
        assert_eq!(p, g.pivot("b", "a").unwrap());
        assert_eq!(p.pivot("a", "b").unwrap(), g);
        assert_eq!(g.pivot("a", "a"), Err(GraphError::SameVertex("a".into())));
        // loops on the pivot pair do not matter
        let looped = g.toggle_loops(["a", "b"]).unwrap();
        assert_eq!(
            looped.pivot("a", "b").unwrap(),
            p.toggle_loops(["a", "b"]).unwrap()
        );
    }

    #[test]
    fn star_complement_examples() {
        let iso = Graph::build(&["a", "b"], &[], &[]).unwrap();
        assert_eq!(iso.star_complement("a").unwrap(), iso);
        let t = triangle();
        let expected = Graph::build(&["a", "b", "c"], &[], &[("b", "a"), ("a", "c")]).unwrap();
        assert_eq!(t.star_complement("a").unwrap(), expected);
        let nb = t.neighbors("a").unwrap();
        assert_eq!(
            t.toggle_loops(&nb).unwrap().local_complement("a").unwrap(),
            t.local_complement("a").unwrap().toggle_loops(&nb).unwrap()
        );
    }

    #[test]
    fn disjoint_union_examples() {
        let g = path_cabd();
        assert_eq!(g.disjoint_union(&Graph::empty()).unwrap(), g);
        let h = Graph::build(&["x", "y"], &["x"], &[("x", "y")]).unwrap();
        let u = g.disjoint_union(&h).unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(u.rank(), g.rank() + h.rank());
        assert_eq!(u.vertices()[4].as_str(), "x");
        assert_eq!(g.disjoint_union(&g), Err(GraphError::NameCollision("a".into())));
    }

    #[test]
    fn neighbors_examples() {
        let lone = Graph::build(&["a"], &["a"], &[]).unwrap();
        assert!(lone.neighbors("a").unwrap().is_empty());
        let g = path_cabd();
        let mut n = g.neighbors("a").unwrap();
        n.sort();
        assert_eq!(n, vec![VertexId::from("b"), VertexId::from("c")]);
        let e = Graph::build(&["a", "b"], &[], &[("a", "b")]).unwrap();
        assert_eq!(e.neighbors("a").unwrap(), vec![VertexId::from("b")]);
    }

    #[test]
    fn rank_examples() {
        let g1 = Graph::build(&["c", "d", "b"], &["c", "b"], &[("d", "b")]).unwrap();
        assert_eq!(g1.rank(), 3);
        let g2 = Graph::build(&["c", "d", "b"], &["c", "b"], &[("c", "d"), ("d", "b")]).unwrap();
        assert_eq!(g2.rank(), 2);
        assert_eq!(Graph::empty().rank(), 0);
        assert_eq!(Graph::empty().corank(), 0);
    }

    #[test]
    fn classify_pairs() {
        let g = Graph::build(&["a", "b", "c"], &["a"], &[("a", "b")]).unwrap();
        assert_eq!(
            g.classify_pair("a", "b").unwrap(),
            Some(AdjacentPair { a_looped: true, b_looped: false })
        );
        assert_eq!(g.classify_pair("a", "c").unwrap(), None);
    }

    #[test]
    fn text_format_round_trip() {
        let src = "# sample\nvertices: a b c d\nloops: b d\nedges: a-b b-c c-d\n";
        let file = parse_graph(src).unwrap();
        let g = &file.graph;
        assert_eq!(g.loops(), vec![VertexId::from("b"), VertexId::from("d")]);
        assert_eq!(file.edge_order.len(), 5);
        assert_eq!(parse_graph(&g.to_text()).unwrap().graph, *g);
        let alt = parse_graph("vertices: a b\nedges: a-a a-b").unwrap().graph;
        assert!(alt.has_loop("a").unwrap());
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(parse_graph("vertices: a b\nedges: a-b b-a"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertices: a\nloops: a\nedges: a-a"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("vertices: a\nedges: a-q"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("vertices: a a"), Err(GraphError::DuplicateVertex(_))));
        assert!(matches!(parse_graph("colour: red"), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn same_labelled_ignores_storage_order() {
        let g = path_cabd();
        let s = g.sorted_by_name();
        assert!(g.same_labelled(&s));
        assert!(!g.same_labelled(&g.add_edge("c", "d").unwrap()));
        assert!(!g.same_labelled(&g.swap_names("a", "c").unwrap()));
    }
}
