//! Prime-ideal counting functions for `Q[x]/(x^2 + 1)`.

use kamhn::field::{counts, make_field, CountSeries};
use kamhn::poly::UniPoly;

fn main() {
    let k = make_field(&UniPoly::from_i64(&[1, 0, 1])).unwrap();
    println!("n_K = {}, disc = {}", k.n_k(), k.disc());
    let s = counts(&k, 10.0).unwrap();
    println!(
        "x=10: N_f={} pi1={} pi_K={} theta={:.4} psi={:.4}",
        s.n_f, s.pi1, s.pi_k, s.theta_k, s.psi_k
    );

    let series = CountSeries::build(&k, 100_000).unwrap();
    for x in [100u64, 1_000, 10_000, 100_000] {
        let s = series.at(x);
        println!(
            "x={x:>6}: pi_K={:>6} psi_K={:>12.3} psi_K/x={:.4}",
            s.pi_k,
            s.psi_k,
            s.psi_k / x as f64
        );
    }
}
