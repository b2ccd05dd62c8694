//! Roots and factor-degree profiles of polynomials over prime fields.

use kamhn::modp::{count_distinct_roots, degree_profile, system_has_root};
use kamhn::poly::{parse_system, UniPoly};

fn main() {
    let f = UniPoly::from_i64(&[-1, -1, 0, 0, 1]); // x^4 - x - 1
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 283] {
        let prof = degree_profile(&f, p).unwrap();
        println!(
            "p={p:>3} roots={} profile={:?} ramified={}",
            count_distinct_roots(&f, p).unwrap(),
            prof.entries,
            prof.ramified
        );
    }
    let sys = parse_system("x1^2 + x2^2 - 1\nx1 - 2*x2").unwrap();
    for p in [3u64, 5, 7, 11, 13] {
        println!("mod {p}: {:?}", system_has_root(&sys, p, 1_000_000));
    }
}
