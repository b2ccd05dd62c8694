//! Closed-form remainder bounds and the hypothesis probes.

use kamhn::field::{
    disc_log_bound, dzh_rhs, gipit_exponent, gipit_probe, make_field, rho_sum_bound, uwepit_tail,
    uwesipit_tail,
};
use kamhn::poly::UniPoly;

fn main() {
    let g = UniPoly::from_i64(&[1, 0, 1]);
    let k = make_field(&g).unwrap();
    let (x, t) = (10f64.exp(), 5f64.exp());
    println!("full interval tail: {:.6}", uwepit_tail(&k, x, t).unwrap());
    println!(
        "full interval tail, T = inf: {:.6}",
        uwepit_tail(&k, x, f64::INFINITY).unwrap()
    );
    println!(
        "short interval tail: {:.6}",
        uwesipit_tail(&k, x, x, t).unwrap()
    );
    println!("sum 1/|rho| bound: {:.6}", rho_sum_bound(&k, t).unwrap());
    println!(
        "log|disc| bound: {:.6} (actual {:.6})",
        disc_log_bound(&g, 1.0).unwrap(),
        4f64.ln()
    );
    println!("GIPIT exponent, kappa=1: {}", gipit_exponent(&k, 1.0));
    println!(
        "DZH rhs at x=T=100, kappa=1: {:.6}",
        dzh_rhs(&k, 100.0, 100.0, 1.0).unwrap()
    );
    for x in [5.0, 10.0, 20.0] {
        let p = gipit_probe(&k, x, 0.0).unwrap();
        println!(
            "probe x={x}: lhs={} rhs={:.3} holds={}",
            p.lhs, p.rhs, p.holds
        );
    }
}
