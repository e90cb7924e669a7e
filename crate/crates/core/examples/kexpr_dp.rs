//! Truncated B_I over a k-expression, without building the graph.

use interlace::cwdp::dp_bi_truncated_with_stats;
use interlace::interlace::brute_force_b_truncated;
use interlace::interlace::specialize::eta_prime;
use interlace::kexpr::{complete_graph_expr, eval_kexpr, parse_kexpr};
use interlace::poly::{MultiPoly, Substitution};

fn main() {
    let e = parse_kexpr(include_str!("data/k3.cwx")).unwrap();
    let lg = eval_kexpr(&e, 2, true).unwrap();
    print!("{e}\n{}", lg.graph.to_text());

    let (p, stats) = dp_bi_truncated_with_stats(&e, 2, 3).unwrap();
    let ones = Substitution::new()
        .family_const("x", MultiPoly::one())
        .family_const("y", MultiPoly::one());
    println!("B_I truncated at 3: {p}");
    println!("I: {}  (largest table {})", p.substitute(&ones), stats.max_table);
    let brute = brute_force_b_truncated(&lg.graph, 3).unwrap().substitute(&eta_prime());
    println!("matches brute force: {}", brute == p);

    let k30 = complete_graph_expr(30);
    let (p, stats) = dp_bi_truncated_with_stats(&k30, 2, 2).unwrap();
    println!("K30 at d=2: {} terms, {} products", p.len(), stats.products);
}
