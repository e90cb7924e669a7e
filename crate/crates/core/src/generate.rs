//! Small-graph generators for exhaustive and randomized checks.

use rand::Rng;

use crate::gf2::rank_of_rows;
use crate::graph::Graph;
use crate::kexpr::KExpr;
use crate::matroid::Matroid;

/// `a`, `b`, ..., `z`, then `v26`, `v27`, ...
pub fn vertex_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect()
}

fn from_pattern(n: usize, pattern: u64) -> Graph {
    let names = vertex_names(n);
    let mut edges: Vec<(&str, &str)> = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i..n {
            if pattern >> bit & 1 == 1 {
                edges.push((&names[i], &names[j]));
            }
            bit += 1;
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Graph::build(&refs, &[], &edges).expect("generated names are valid")
}

/// Every looped simple graph on vertices `a, b, ...` (all `2^(n(n+1)/2)`
/// loop/edge patterns).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let cells = n * (n + 1) / 2;
    assert!(cells < 64, "too many patterns");
    (0u64..(1u64 << cells)).map(move |p| from_pattern(n, p))
}

/// Every loop-free graph on `n` vertices.
pub fn all_loop_free_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let cells = n * n.saturating_sub(1) / 2;
    assert!(cells < 64, "too many patterns");
    (0u64..(1u64 << cells)).map(move |p| {
        let names = vertex_names(n);
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p >> bit & 1 == 1 {
                    edges.push((names[i].as_str(), names[j].as_str()));
                }
                bit += 1;
            }
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Graph::build(&refs, &[], &edges).expect("generated names are valid")
    })
}

/// Random graph: each edge with probability `edge_p`, each loop with `loop_p`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_p: f64, loop_p: f64) -> Graph {
    let names = vertex_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut loops = Vec::new();
    let mut edges = Vec::new();
    for i in 0..n {
        if rng.gen_bool(loop_p) {
            loops.push(refs[i]);
        }
        for j in i + 1..n {
            if rng.gen_bool(edge_p) {
                edges.push((refs[i], refs[j]));
            }
        }
    }
    Graph::build(&refs, &loops, &edges).expect("generated names are valid")
}

/// Random vertex subset of `g`.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Vec<String> {
    g.vertices()
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|v| v.to_string())
        .collect()
}

/// Random k-expression with exactly `constants` constants and labels in
/// `1..=k`; each node is wrapped in an `add` or `ren` with probability 1/2.
pub fn random_kexpr<R: Rng + ?Sized>(rng: &mut R, k: u32, constants: usize, loop_p: f64) -> KExpr {
    assert!(k >= 1 && constants >= 1);
    let mut e = if constants == 1 {
        KExpr::Const {
            label: rng.gen_range(1..=k),
            looped: rng.gen_bool(loop_p),
        }
    } else {
        let left = rng.gen_range(1..constants);
        KExpr::union(
            random_kexpr(rng, k, left, loop_p),
            random_kexpr(rng, k, constants - left, loop_p),
        )
    };
    while k >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(1..=k);
        let j = loop {
            let j = rng.gen_range(1..=k);
            if j != i {
                break j;
            }
        };
        e = if rng.gen_bool(0.7) { KExpr::add(i, j, e) } else { KExpr::ren(i, j, e) };
    }
    e
}

/// Column matroid of a random `rows x n` matrix over GF(2); elements `1..=n`.
pub fn random_binary_matroid<R: Rng + ?Sized>(rng: &mut R, n: usize, rows: usize) -> Matroid {
    assert!(n <= 16 && rows < 64);
    let cols: Vec<u64> = (0..n).map(|_| rng.gen::<u64>() & ((1u64 << rows) - 1)).collect();
    let rank_of = |mask: u32| {
        let mut sel: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| cols[i]).collect();
        rank_of_rows(&mut sel)
    };
    let r = rank_of((1u32 << n) - 1);
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let bases: Vec<Vec<String>> = (0u32..1 << n)
        .filter(|&m| m.count_ones() as usize == r && rank_of(m) == r)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| names[i].clone()).collect())
        .collect();
    Matroid::from_bases(&names, &bases).expect("column matroids satisfy the basis axioms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_graphs(0).count(), 1);
        assert_eq!(all_graphs(3).count(), 64);
        assert_eq!(all_loop_free_graphs(4).count(), 64);
        assert!(all_loop_free_graphs(4).all(|g| g.loops().is_empty()));
    }

    #[test]
    fn random_kexpr_sizes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for c in 1..=12 {
            let e = random_kexpr(&mut rng, 3, c, 0.3);
            assert_eq!(e.constants(), c);
            assert!(crate::kexpr::validate_width(&e) <= 3);
        }
    }

    #[test]
    fn random_matroids_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for n in 0..=6 {
            let m = random_binary_matroid(&mut rng, n, 3);
            assert_eq!(m.len(), n);
            assert!(m.rank() <= 3);
        }
    }

    #[test]
    fn patterns_are_distinct() {
        let gs: std::collections::HashSet<Graph> = all_graphs(3).collect();
        assert_eq!(gs.len(), 64);
    }
}
