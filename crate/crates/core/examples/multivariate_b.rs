//! B(G) of a small looped graph, by the static definition and by the
//! reduction rules.

use interlace::graph::Graph;
use interlace::interlace::{brute_force_b, interlace_terms, RecursiveB, Strategy};

fn main() {
    let g = Graph::build(&["a", "b", "c"], &["b"], &[("a", "b"), ("b", "c")]).unwrap();
    print!("{}", g.to_text());

    println!("first terms m(G,A,B):");
    for t in interlace_terms(&g).unwrap().iter().take(6) {
        println!("  A={:?} B={:?} -> {}", t.a, t.b, t.monomial().text());
    }

    let brute = brute_force_b(&g).unwrap();
    let mut rec = RecursiveB::new(Strategy::Least);
    let recursive = rec.eval(&g);
    println!("B(G) = {brute}");
    println!("{} terms, recursion agrees: {}, memo holds {} graphs", brute.len(), brute == recursive, rec.cache_len());
}
