use interlace::generate::{all_graphs, random_graph, vertex_names};
use interlace::graph::Graph;
use interlace::interlace::specialize::{b_i, eta_prime, stable_sets, BiMethod};
use interlace::interlace::{
    brute_force_b, intermediate_bij, intermediate_table, valid_steps, InterlaceError, Place, RecursiveB, Strategy,
};
use interlace::poly::MultiPoly;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(n: usize, seed: u64) -> Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.5, 0.4)
}

/// Renames the vertices of `g` so that it can be joined with another graph.
fn primed(g: &Graph) -> Graph {
    let names: Vec<String> = g.vertices().iter().map(|v| format!("{v}p")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut out = Graph::with_vertices(&refs).unwrap();
    for (a, b) in g.edges() {
        out = out.add_edge(&format!("{a}p"), &format!("{b}p")).unwrap();
    }
    for a in g.loops() {
        out = out.add_edge(&format!("{a}p"), &format!("{a}p")).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seeded_strategies_agree_with_brute_force(n in 0usize..7, seed: u64, strategy_seed: u64) {
        let g = graph(n, seed);
        prop_assert_eq!(RecursiveB::new(Strategy::Seeded(strategy_seed)).eval(&g), brute_force_b(&g).unwrap());
    }

    #[test]
    fn b_is_multiplicative_over_disjoint_union(n in 0usize..4, m in 0usize..4, s1: u64, s2: u64) {
        let g = graph(n, s1);
        let h = primed(&graph(m, s2));
        let joined = g.disjoint_union(&h).unwrap();
        prop_assert_eq!(brute_force_b(&joined).unwrap(), brute_force_b(&g).unwrap() * brute_force_b(&h).unwrap());
    }

    #[test]
    fn b_has_three_to_the_n_terms_summing_to_three_to_the_n(n in 0usize..7, seed: u64) {
        let g = graph(n, seed);
        let b = brute_force_b(&g).unwrap();
        let total: i64 = b.terms().map(|(_, c)| i64::try_from(c.clone()).unwrap()).sum();
        prop_assert_eq!(b.len(), 3usize.pow(n as u32));
        prop_assert_eq!(total, 3i64.pow(n as u32));
    }

    #[test]
    fn u_exponent_is_rank_of_the_toggled_induced_graph(n in 0usize..6, seed: u64) {
        let g = graph(n, seed);
        let b = brute_force_b(&g).unwrap();
        let u = interlace::poly::Indeterminate::ordinary("u");
        for (m, _) in b.terms() {
            let mut keep = Vec::new();
            let mut toggle = Vec::new();
            for (ind, _) in m.powers() {
                if let Some(v) = ind.vertex() {
                    keep.push(v.to_string());
                    if ind.tag() == "y" {
                        toggle.push(v.to_string());
                    }
                }
            }
            let h = g.induced(&keep).unwrap().toggle_loops(&toggle).unwrap();
            prop_assert_eq!(m.exponent(&u) as usize, h.rank());
        }
    }

    #[test]
    fn b_i_counts_stable_sets(n in 0usize..7, seed: u64) {
        let g = graph(n, seed);
        let p = b_i(&g, BiMethod::Substitution).unwrap();
        prop_assert_eq!(p.len(), stable_sets(&g).unwrap().len());
        prop_assert_eq!(p, brute_force_b(&g).unwrap().substitute(&eta_prime()));
    }
}

#[test]
fn table_matches_single_parts() {
    let g = Graph::build(&["a", "b", "c", "d"], &["c"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap();
    let table = intermediate_table(&g, "a", "b").unwrap();
    let mut sum = MultiPoly::zero();
    for (i, pi) in Place::ALL.iter().enumerate() {
        for (j, pj) in Place::ALL.iter().enumerate() {
            assert_eq!(table[i][j], intermediate_bij(&g, "a", "b", *pi, *pj).unwrap());
            sum += table[i][j].clone();
        }
    }
    assert_eq!(sum, brute_force_b(&g).unwrap());
}

#[test]
fn every_first_step_gives_the_same_result_on_small_graphs() {
    for g in (0..=3).flat_map(all_graphs) {
        let want = brute_force_b(&g).unwrap();
        for step in valid_steps(&g) {
            assert_eq!(RecursiveB::default().eval_with_step(&g, &step).unwrap(), want, "{step}");
        }
    }
}

#[test]
fn invalid_steps_are_rejected() {
    let g = Graph::build(&["a", "b", "c"], &[], &[("a", "b")]).unwrap();
    let bad = valid_steps(&Graph::build(&["a", "c"], &[], &[("a", "c")]).unwrap());
    for step in bad {
        assert!(matches!(RecursiveB::default().eval_with_step(&g, &step), Err(InterlaceError::InvalidStep(_))));
    }
}

#[test]
fn recursion_on_a_ten_vertex_path() {
    let names = vertex_names(10);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str)> = refs.windows(2).map(|w| (w[0], w[1])).collect();
    let g = Graph::build(&refs, &[], &edges).unwrap();
    let b = RecursiveB::default().eval(&g);
    let total: num_bigint::BigInt = b.terms().map(|(_, c)| c.clone()).sum();
    assert_eq!(total, num_bigint::BigInt::from(3u64.pow(10)));
}
