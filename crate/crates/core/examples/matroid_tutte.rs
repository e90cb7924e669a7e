//! Basis activities and the Tutte polynomial of the triangle's cycle matroid.

use interlace::matroid::{collapse, parse_matroid, TutteMethod};

fn main() {
    let m = parse_matroid(include_str!("data/k3.matroid"), None).unwrap();
    for &b in m.bases() {
        let (ia, ea) = m.activities(b).unwrap();
        println!("basis {}: IA {} EA {}", m.set_text(b), m.set_text(ia), m.set_text(ea));
    }
    let by_rank = m.tutte_polynomial(TutteMethod::RankShift);
    let by_activities = m.tutte_polynomial(TutteMethod::Activities);
    println!("T = {by_rank} (activities give {by_activities})");
    let tilde = m.multivariate_tutte();
    println!("T~ = {tilde}");
    println!("sigma(T~) = T: {}", tilde.substitute(&collapse()) == by_rank);

    for a in 0..1u64 << m.len() {
        let d = m.activity_interval_decompose(a).unwrap();
        println!("{:>9} in the interval of {}", m.set_text(a), m.set_text(d.basis));
    }
}
