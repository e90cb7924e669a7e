//! Reading a graph back from low-degree monomials of its polynomials.

use interlace::graph::Graph;
use interlace::interlace::reconstruct::{reconstruct_graph, reconstruct_loop_free_from_bxy};
use interlace::interlace::specialize::{b_xy, rho, BxyMethod};
use interlace::interlace::recursive_b;
use interlace::poly::{MultiPoly, Substitution};

fn main() {
    let g = Graph::build(&["a", "b", "c", "d"], &["a", "c"], &[("a", "b"), ("b", "c"), ("a", "d")]).unwrap();
    let p = recursive_b(&g).substitute(&rho());
    println!("rho(B) = {p}");
    print!("{}", reconstruct_graph(&p).unwrap().to_text());

    let h = Graph::build(&["a", "b", "c"], &[], &[("a", "b")]).unwrap();
    let q = b_xy(&h, BxyMethod::Recursion).unwrap().substitute(&Substitution::new().set("v", MultiPoly::one()));
    println!("B_(x=y) at v=1: {q}");
    print!("{}", reconstruct_loop_free_from_bxy(&q).unwrap().to_text());
}
