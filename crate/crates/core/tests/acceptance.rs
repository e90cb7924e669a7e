//! Acceptance criteria 1-9. Each test prints one PASS/FAIL line.
//!
//! Polynomial comparisons are exact. Pinned limits: criterion 1 must finish
//! in under 300 s; in criterion 7 each successive runtime ratio must be < 50.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use interlace::cwdp::dp_bi_truncated;
use interlace::generate::{all_graphs, random_graph, random_kexpr};
use interlace::graph::Graph;
use interlace::interlace::brute_force_b;
use interlace::suites::{run_named, SuiteConfig, SuiteReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CRITERION_1_LIMIT: Duration = Duration::from_secs(300);
const SCALING_RATIO_LIMIT: f64 = 50.0;

fn report(n: u32, title: &str, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {title} ({detail})");
    for f in failures {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed");
}

/// Runs suites, collecting failure lines and the total number of checks.
fn suites(names: &[&str], cfg: &SuiteConfig) -> (Vec<String>, usize) {
    let mut failures = Vec::new();
    let mut checks = 0;
    for name in names {
        let r: SuiteReport = run_named(name, cfg).unwrap_or_else(|| panic!("no suite {name}"));
        checks += r.checks;
        if let Some(f) = r.failure {
            failures.push(format!("{name}: {f}"));
        }
    }
    (failures, checks)
}

fn inline(g: &Graph) -> String {
    g.to_text().trim_end().replace('\n', "; ")
}

#[test]
fn criterion_1_recursive_equals_brute_force() {
    let start = Instant::now();
    let cfg = SuiteConfig {
        exhaustive_n: 4,
        random: 200,
        random_n: 5..=8,
        seed: 11,
    };
    let (mut failures, checks) = suites(&["oracle"], &cfg);
    let elapsed = start.elapsed();
    if elapsed >= CRITERION_1_LIMIT {
        failures.push(format!("took {elapsed:?}, limit {CRITERION_1_LIMIT:?}"));
    }
    report(
        1,
        "recursive B = brute-force B on all graphs n<=4 and 200 random n=5..8",
        &failures,
        &format!("{checks} graphs in {:.1} s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_base_cases() {
    let (failures, checks) = suites(&["base-cases"], &SuiteConfig::quick());
    report(2, "B(empty)=1, B(a), B(a looped), q(a-b)", &failures, &format!("{checks} equalities"));
}

/// The pivot and rank statements exactly as printed, where they differ in
/// scope from what the suites check.
fn printed_graph_statements(g: &Graph, failures: &mut Vec<(&'static str, String)>) {
    let names: Vec<String> = g.vertices().iter().map(|v| v.to_string()).collect();
    for a in &names {
        for b in &names {
            if a == b || !g.adjacent(a, b).unwrap() {
                continue;
            }
            let lc = |h: &Graph, v: &str| h.local_complement(v).unwrap();
            let h = |k: &Graph| k.toggle_loops([a.as_str()]).unwrap().swap_names(a, b).unwrap();
            let gab = g.pivot(a, b).unwrap();
            let ab = lc(&lc(g, a), b);
            if !gab.same_labelled(&h(&lc(&ab, a))) {
                failures.push(("G^ab = h(((G^a)^b)^a∇a) for b in N(G,a)", format!("a={a}, b={b}, G = {}", inline(g))));
            }
            if !lc(&gab, b).same_labelled(&h(&ab)) {
                failures.push(("(G^ab)^b = h((G^a)^b∇a) for b in N(G,a)", format!("a={a}, b={b}, G = {}", inline(g))));
            }
            if g.has_loop(a).unwrap() && !g.has_loop(b).unwrap() {
                let r = gab.delete([b.as_str()]).unwrap().rank();
                if g.rank() != 1 + r {
                    failures.push((
                        "rk(G) = 1 + rk(G^ab-b) for a looped, b unlooped",
                        format!("a={a}, b={b}, G = {}, rk(G)={}, rk(G^ab-b)={r}", inline(g), g.rank()),
                    ));
                }
            }
        }
    }
}

#[test]
fn criterion_3_rank_and_operation_identities() {
    let cfg = SuiteConfig {
        exhaustive_n: 5,
        random: 1000,
        random_n: 1..=10,
        seed: 13,
    };
    let (mut failures, checks) = suites(&["graph-operations", "rank-identities"], &cfg);
    let mut printed = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let randoms = (0..cfg.random).map(|_| {
        let n = rng.gen_range(1..=10);
        random_graph(&mut rng, n, 0.5, 0.4)
    });
    for g in (0..=5).flat_map(all_graphs).chain(randoms.collect::<Vec<_>>()) {
        printed_graph_statements(&g, &mut printed);
    }
    let mut by_statement: BTreeMap<&str, (usize, String)> = BTreeMap::new();
    for (statement, witness) in printed {
        by_statement.entry(statement).or_insert((0, witness)).0 += 1;
    }
    for (statement, (count, witness)) in by_statement {
        failures.push(format!("as printed, {statement} fails {count} times; first: {witness}"));
    }
    report(
        3,
        "local complement / pivot identities and rank identities, n<=5 exhaustive and 1000 random n<=10",
        &failures,
        &format!("{checks} suite checks"),
    );
}

#[test]
fn criterion_4_counterexample() {
    let r = run_named("counterexample14", &SuiteConfig::quick()).unwrap();
    for n in &r.notes {
        println!("  {n}");
    }
    let failures: Vec<String> = r.failure.into_iter().collect();
    report(4, "(*) fails on c-a-b-d with u^3 vs u^2*v, holds for u=0 and y=0", &failures, &format!("{} checks", r.checks));
}

/// The exchange identity with the pivoted graphs as printed.
fn printed_exchange_identity(g: &Graph) -> Option<String> {
    use interlace::poly::MultiPoly;
    let b = |h: &Graph| brute_force_b(h).unwrap();
    let names: Vec<String> = g.vertices().iter().map(|v| v.to_string()).collect();
    for a in &names {
        for bb in &names {
            if a == bb || !g.adjacent(a, bb).unwrap() || g.has_loop(a).unwrap() || g.has_loop(bb).unwrap() {
                continue;
            }
            let (a, bb) = (a.as_str(), bb.as_str());
            let lc = |h: &Graph, v: &str| h.local_complement(v).unwrap();
            let del = |h: &Graph, s: &[&str]| h.delete(s.iter().copied()).unwrap();
            let (ga, gb) = (lc(g, a), lc(g, bb));
            let u = MultiPoly::ordinary("u");
            let left = MultiPoly::indexed("y", bb)
                * (b(&del(&gb, &[bb])) - b(&del(&gb, &[a, bb])) - MultiPoly::indexed("x", a) * &u * b(&del(&lc(&ga, bb), &[a, bb])));
            let right = MultiPoly::indexed("y", a)
                * (b(&del(&ga, &[a])) - b(&del(&ga, &[a, bb])) - MultiPoly::indexed("x", bb) * &u * b(&del(&lc(&gb, a), &[a, bb])));
            if left != right {
                return Some(format!("a={a}, b={bb}, G = {}", inline(g)));
            }
        }
    }
    None
}

#[test]
fn criterion_5_identity_suite() {
    let cfg = SuiteConfig {
        exhaustive_n: 5,
        random: 60,
        random_n: 1..=8,
        seed: 17,
    };
    let names = [
        "pivot-difference",
        "positivity",
        "pair-parts",
        "exchange-identity",
        "theta-mu",
        "b-y0",
        "b-xy",
        "q-rules",
        "big-q",
        "independence",
    ];
    let (mut failures, checks) = suites(&names, &cfg);
    let witness = (0..=4).flat_map(all_graphs).find_map(|g| printed_exchange_identity(&g));
    if let Some(w) = witness {
        failures.push(format!(
            "exchange identity with (G^a)^b on the y_b side, as printed, fails: {w} (the form with (G^b)^a, derived from the pair-part relations, passes)"
        ));
    }
    report(5, "identity suite on all graphs n<=5 and 60 random n<=8", &failures, &format!("{checks} checks"));
}

#[test]
fn criterion_6_reconstruction() {
    let cfg = SuiteConfig {
        exhaustive_n: 4,
        ..SuiteConfig::quick()
    };
    let (failures, checks) = suites(&["reconstruct"], &cfg);
    report(6, "graphs n<=4 from rho(B), loop-free graphs n<=4 from B_(x=y) at v=1", &failures, &format!("{checks} round trips"));
}

fn time_dp(exprs: &[interlace::kexpr::KExpr]) -> Duration {
    let start = Instant::now();
    for e in exprs {
        dp_bi_truncated(e, 2, 2).unwrap();
    }
    start.elapsed()
}

#[test]
fn criterion_7_clique_width_dp() {
    let cfg = SuiteConfig {
        random: 120,
        seed: 19,
        ..SuiteConfig::quick()
    };
    let (mut failures, checks) = suites(&["cwdp"], &cfg);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut times = Vec::new();
    for size in [10, 20, 40] {
        let exprs: Vec<_> = (0..200).map(|_| random_kexpr(&mut rng, 2, size, 0.3)).collect();
        time_dp(&exprs);
        times.push(time_dp(&exprs).as_secs_f64());
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
    for r in &ratios {
        if *r >= SCALING_RATIO_LIMIT {
            failures.push(format!("runtime ratio {r:.2} >= {SCALING_RATIO_LIMIT}"));
        }
    }
    report(
        7,
        "DP = truncated brute-force B_I on 120 random expressions, k in {2,3}, d in 0..=4; k=2, d=2 scaling",
        &failures,
        &format!(
            "{checks} checks; 200 expressions of 10/20/40 constants took {:.4}/{:.4}/{:.4} s, ratios {:.2}/{:.2}; brute force at 40 vertices would visit 3^40 pairs",
            times[0], times[1], times[2], ratios[0], ratios[1]
        ),
    );
}

#[test]
fn criterion_8_matroid_appendix() {
    let (mut failures, mut checks) = suites(
        &["matroid-partition", "tutte"],
        &SuiteConfig {
            exhaustive_n: 4,
            random: 50,
            seed: 29,
            ..SuiteConfig::quick()
        },
    );
    let (f, c) = suites(
        &["sub-families"],
        &SuiteConfig {
            random: 500,
            seed: 31,
            ..SuiteConfig::quick()
        },
    );
    failures.extend(f);
    checks += c;
    report(
        8,
        "activity partition and Tutte identities on graphic matroids n<=4 and 50 random matroids; Sub(B) characterization",
        &failures,
        &format!("{checks} checks"),
    );
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_interlace")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

#[test]
fn criterion_9_determinism() {
    let cfg = SuiteConfig {
        exhaustive_n: 4,
        ..SuiteConfig::quick()
    };
    let (mut failures, checks) = suites(&["choice", "determinism"], &cfg);
    let runs: [&[&str]; 3] = [
        &["compute", "--poly", "B", "--method", "both", "--inline", "vertices: a b c d; loops: b; edges: a-b b-c c-d d-a"],
        &["check", "--suite", "counterexample14"],
        &["cwdp", "--k", "2", "--d", "3", "--expr", "add(1,2, ren(2,1, add(1,2, (1+2))) + 2)"],
    ];
    for args in runs {
        let first = cli(args);
        let second = cli(args);
        if first.0 != Some(0) || first != second {
            failures.push(format!("{args:?}: exit {:?}, outputs identical: {}", first.0, first == second));
        }
    }
    report(9, "byte-identical CLI runs; result independent of the first reduction step, all graphs n<=4", &failures, &format!("{checks} checks"));
}
