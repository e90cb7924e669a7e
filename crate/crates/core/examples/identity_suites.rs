//! Every identity suite on small inputs.

use interlace::suites::{run_all, SuiteConfig};

fn main() {
    let cfg = SuiteConfig {
        exhaustive_n: 4,
        random: 30,
        ..SuiteConfig::quick()
    };
    for r in run_all(&cfg) {
        print!("{}", r.render());
    }
}
