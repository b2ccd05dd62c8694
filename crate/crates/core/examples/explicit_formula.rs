//! `psi(x)` from the first zeros of zeta against the sieve value.

use kamhn::field::{counts, make_field, psi_explicit, s_trunc, ZeroTable};
use kamhn::poly::UniPoly;

fn main() {
    let table = ZeroTable::bundled();
    let q = make_field(&UniPoly::from_i64(&[0, 1])).unwrap();
    println!(
        "{} zeros, last ordinate {:.6}",
        table.len(),
        table.gammas()[table.len() - 1]
    );
    for x in [100.0, 500.0, 1000.0, 5000.0] {
        let sieve = counts(&q, x).unwrap().psi_k;
        let e100 = psi_explicit(x, &table).unwrap() - sieve;
        let e10 = psi_explicit(x, &table.truncated(10)).unwrap() - sieve;
        println!(
            "x={x:>6}: psi={sieve:>10.4} error(100 zeros)={e100:+.4} error(10 zeros)={e10:+.4}"
        );
    }
    println!(
        "S(1000, 100) = {:.6}",
        s_trunc(1000.0, 100.0, &table).unwrap()
    );
}
