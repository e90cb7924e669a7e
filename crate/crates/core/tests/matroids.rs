use interlace::generate::random_binary_matroid;
use interlace::matroid::{parse_matroid, sub_form_equivalence, Matroid, MatroidError, SetFamily, TutteMethod};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eval(p: &interlace::poly::MultiPoly, x: i64, y: i64) -> BigInt {
    p.eval_i64(|i| match i.tag() {
        "x" => Some(x),
        "y" => Some(y),
        _ => None,
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tutte_evaluations(n in 0usize..7, rows in 1usize..5, seed: u64) {
        let m = random_binary_matroid(&mut ChaCha8Rng::seed_from_u64(seed), n, rows);
        let t = m.tutte_polynomial(TutteMethod::Activities);
        prop_assert_eq!(eval(&t, 1, 1), BigInt::from(m.bases().len()));
        prop_assert_eq!(eval(&t, 2, 2), BigInt::from(1u64 << n));
        prop_assert_eq!(t, m.tutte_polynomial(TutteMethod::RankShift));
    }

    #[test]
    fn fundamental_circuits_and_cocycles(n in 1usize..7, rows in 1usize..5, seed: u64) {
        let m = random_binary_matroid(&mut ChaCha8Rng::seed_from_u64(seed), n, rows);
        for &b in m.bases() {
            for e in 0..n {
                if b >> e & 1 == 1 {
                    let c = m.fundamental_cocycle(b, e).unwrap();
                    prop_assert!(c >> e & 1 == 1);
                    prop_assert_eq!(c & b, 1 << e);
                } else {
                    let c = m.fundamental_cycle(b, e).unwrap();
                    prop_assert!(c >> e & 1 == 1);
                    prop_assert!(!m.is_independent(c));
                    prop_assert!(m.is_independent(c & !(1 << e)));
                }
            }
        }
    }
}

#[test]
fn triangle_examples() {
    let m = parse_matroid(include_str!("../examples/data/k3.matroid"), None).unwrap();
    assert_eq!(m.rank_subset(m.full()), 2);
    let b12 = m.mask_of(&["1", "2"]).unwrap();
    assert_eq!(m.fundamental_cycle(b12, 2).unwrap(), m.full());
    assert_eq!(m.fundamental_cocycle(b12, 0).unwrap(), m.mask_of(&["1", "3"]).unwrap());
    assert_eq!(m.tutte_polynomial(TutteMethod::Activities), "x^2 + x + y".parse().unwrap());
}

#[test]
fn parallel_pair_and_coloop() {
    let u12 = Matroid::from_bases(&["1", "2"], &[vec!["1"], vec!["2"]]).unwrap();
    let b1 = u12.mask_of(&["1"]).unwrap();
    assert_eq!(u12.fundamental_cycle(b1, 1).unwrap(), u12.full());
    let coloop = Matroid::from_bases(&["1", "2"], &[vec!["1"]]).unwrap();
    assert_eq!(coloop.fundamental_cocycle(b1, 0).unwrap(), b1);
}

#[test]
fn graphic_matroid_from_graph_file() {
    let text = "groundset-from-graph: path4.graph\n";
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let m = parse_matroid(text, Some(&dir)).unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m.bases().len(), 1);
    assert_eq!(m.tutte_polynomial(TutteMethod::RankShift), "x^3".parse().unwrap());
}

#[test]
fn invalid_matroids_are_rejected() {
    assert!(matches!(
        Matroid::from_bases(&["1", "2"], &[vec!["1"], vec!["1", "2"]]),
        Err(MatroidError::NotEquicardinal(..))
    ));
    let exchange = Matroid::from_bases(&["1", "2", "3", "4"], &[vec!["1", "2"], vec!["3", "4"]]);
    assert!(matches!(exchange, Err(MatroidError::Exchange { .. })));
}

#[test]
fn enumerating_polynomial_characterization() {
    let universe = ["1", "2", "3"];
    assert_eq!(sub_form_equivalence(&SetFamily::sub(&universe, 0b101).unwrap()), (true, true, true));
    assert_eq!(sub_form_equivalence(&SetFamily::new(&universe, [0b000, 0b011]).unwrap()), (false, false, false));
    assert_eq!(sub_form_equivalence(&SetFamily::new(&universe, Vec::<u64>::new()).unwrap()), (false, false, false));
}
