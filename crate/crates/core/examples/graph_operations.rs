//! Local complementation, pivoting and loop toggling.

use interlace::graph::Graph;

fn show(label: &str, g: &Graph) {
    println!("{label}: {}", g.to_text().trim_end().replace('\n', "; "));
}

fn main() {
    let g = Graph::build(&["a", "b", "c", "d"], &[], &[("c", "a"), ("a", "b"), ("b", "d")]).unwrap();
    show("G", &g);
    show("G^a", &g.local_complement("a").unwrap());
    show("G*a", &g.star_complement("a").unwrap());
    let gab = g.pivot("a", "b").unwrap();
    show("G^ab", &gab);
    println!("(G^ab)^ab = G: {}", gab.pivot("a", "b").unwrap().same_labelled(&g));

    let x = ["a", "c"];
    let toggled = g.toggle_loops(x).unwrap();
    show("G∇{a,c}", &toggled);
    println!("rk(G) = {}, rk(G∇{{a,c}}) = {}", g.rank(), toggled.rank());
    println!("rk(G) = 2 + rk(G^ab-a-b): {}", g.rank() == 2 + gab.delete(["a", "b"]).unwrap().rank());
}
