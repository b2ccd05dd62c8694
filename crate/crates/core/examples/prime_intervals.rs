//! Primes in the stride intervals `(t^C, (t+1)^C]`, primality and factoring.

use kamhn::primes::{is_prime, prime_factors, primes_in, primorial, PrimeInterval};
use num_bigint::BigUint;

fn main() {
    for t in 2..=6 {
        let iv = PrimeInterval::power_stride(t, 2);
        let ps: Vec<String> = primes_in(&iv, 1_000)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        println!("({}, {}]: {}", iv.lo, iv.hi, ps.join(" "));
    }
    let m = BigUint::from(2u32).pow(61) - 1u32;
    println!("2^61 - 1 prime: {}", is_prime(&m));
    let p3 = primorial(3);
    let n = p3.pow(30) - 1u32;
    let fs: Vec<String> = prime_factors(&n).iter().map(ToString::to_string).collect();
    println!("prime factors of 30^30 - 1: {}", fs.join(" "));
}
