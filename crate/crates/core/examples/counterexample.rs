//! B(G-a) - B(G-a-b) and B(G^ab-a) - B(G^ab-a-b) differ on the path c-a-b-d.

use interlace::suites::{run_named, SuiteConfig};

fn main() {
    let report = run_named("counterexample14", &SuiteConfig::quick()).unwrap();
    print!("{}", report.render());
}
