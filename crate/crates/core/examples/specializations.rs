//! The classical interlace polynomials as specializations of B, each
//! compared with its own recursion.

use interlace::generate::all_loop_free_graphs;
use interlace::graph::Graph;
use interlace::interlace::recursive_b;
use interlace::interlace::specialize::{
    b_i, b_xy, b_y0, big_q_poly, independence_poly, q_poly, sigma_q, tau, BiMethod, BigQMethod, BxyMethod, By0Method,
    IMethod, QMethod,
};

fn main() {
    let g = Graph::build(&["a", "b", "c", "d"], &[], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
    let b = recursive_b(&g);
    println!("C4, B has {} terms", b.len());
    println!("q   = {}", b.substitute(&sigma_q()));
    println!("Q   = {}", b.substitute(&tau()));
    println!("I   = {}", independence_poly(&g, IMethod::Direct).unwrap());
    println!("B_I = {}", b_i(&g, BiMethod::RecursionI5I6).unwrap());

    let (mut agree, mut total) = (0, 0);
    for g in (0..=4).flat_map(all_loop_free_graphs) {
        let ok = q_poly(&g, QMethod::Substitution).unwrap() == q_poly(&g, QMethod::RecursionQ3Prime).unwrap()
            && big_q_poly(&g, BigQMethod::Substitution).unwrap() == big_q_poly(&g, BigQMethod::RecursionQ).unwrap()
            && b_y0(&g, By0Method::Substitution).unwrap() == b_y0(&g, By0Method::RecursionAlt).unwrap()
            && b_xy(&g, BxyMethod::Substitution).unwrap() == b_xy(&g, BxyMethod::Recursion).unwrap();
        agree += ok as usize;
        total += 1;
    }
    println!("loop-free graphs n<=4 where every recursion matches its substitution: {agree} of {total}");
}
