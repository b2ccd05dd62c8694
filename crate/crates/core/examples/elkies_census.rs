//! Primes modulo which the Elkies systems have a root.

use kamhn::kamhn::{default_a_count, gen_elkies, prime_census, DEFAULT_DECIDE_BUDGET};

fn main() {
    for (n, bound) in [(1usize, 1_000u64), (2, 10_000), (3, 100_000)] {
        let sys = gen_elkies(n).unwrap();
        let a = default_a_count(&sys);
        let r = prime_census(&sys, bound, DEFAULT_DECIDE_BUDGET, a);
        println!(
            "n={n}: {} primes <= {bound}: {:?} (a_count bound {a}, within {})",
            r.count, r.bad_primes, r.within_bound
        );
    }
}
