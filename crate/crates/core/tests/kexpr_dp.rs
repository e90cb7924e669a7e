use interlace::cwdp::{dp_bi_truncated, dp_table};
use interlace::generate::random_kexpr;
use interlace::interlace::specialize::{b_i, BiMethod};
use interlace::kexpr::{complete_graph_expr, eval_kexpr, parse_kexpr, validate_width, KExprError};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn display_round_trips(k in 1u32..4, constants in 1usize..10, seed: u64) {
        let e = random_kexpr(&mut ChaCha8Rng::seed_from_u64(seed), k, constants, 0.3);
        prop_assert_eq!(parse_kexpr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn dp_matches_stable_set_enumeration(k in 1u32..4, constants in 1usize..10, d in 0u32..5, seed: u64) {
        let e = random_kexpr(&mut ChaCha8Rng::seed_from_u64(seed), k, constants, 0.3);
        let g = eval_kexpr(&e, k, false).unwrap().graph;
        prop_assert_eq!(g.len(), constants);
        prop_assert_eq!(dp_bi_truncated(&e, k, d).unwrap(), b_i(&g, BiMethod::Direct).unwrap().truncate(d));
    }

    #[test]
    fn table_keys_are_label_sets_within_width(k in 1u32..4, constants in 1usize..10, seed: u64) {
        let e = random_kexpr(&mut ChaCha8Rng::seed_from_u64(seed), k, constants, 0.3);
        let (table, stats) = dp_table(&e, k, 3).unwrap();
        prop_assert!(stats.max_table <= 1 << k);
        prop_assert!(table.keys().all(|&l| l < 1 << k));
        prop_assert!(validate_width(&e) <= k);
    }
}

#[test]
fn complete_graphs_have_n_plus_one_stable_set_terms() {
    for n in 1..12 {
        let e = complete_graph_expr(n);
        let p = dp_bi_truncated(&e, 2, n as u32).unwrap();
        assert_eq!(p.len(), n + 1);
        assert_eq!(eval_kexpr(&e, 2, false).unwrap().graph.edges().len(), n * (n - 1) / 2);
    }
}

#[test]
fn k3_file_parses() {
    let e = parse_kexpr(include_str!("../examples/data/k3.cwx")).unwrap();
    assert_eq!(validate_width(&e), 2);
    assert_eq!(e.constants(), 3);
}

#[test]
fn malformed_expressions() {
    assert!(matches!(parse_kexpr("add(1,1,(1 + 2))"), Err(KExprError::SelfAdd(1))));
    assert!(matches!(parse_kexpr("0"), Err(KExprError::ZeroLabel { .. })));
    assert!(matches!(parse_kexpr("add(1,2,"), Err(KExprError::Syntax { .. })));
    assert!(matches!(eval_kexpr(&parse_kexpr("(1 + 3)").unwrap(), 2, false), Err(KExprError::Width { label: 3, k: 2 })));
}

#[test]
fn ordered_evaluation_follows_union_order() {
    let e = parse_kexpr("((1 + 2) + 1l)").unwrap();
    let lg = eval_kexpr(&e, 2, true).unwrap();
    let order: Vec<String> = lg.order.clone().unwrap().iter().map(|v| v.to_string()).collect();
    assert_eq!(order, ["v1", "v2", "v3"]);
    assert_eq!(lg.label_of("v3"), Some(1));
    assert!(lg.graph.has_loop("v3").unwrap());
}
