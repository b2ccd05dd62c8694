//! Checking a parametrization `x_j = h_j(t) / a_j` over the roots of `hhat`.

use kamhn::nullcert::{unired_size_bounds, verify_unired, UnivariateReduction};
use kamhn::poly::parse_system;

fn main() {
    let sys = parse_system("x2 - x1^2\nx2 - 2").unwrap();
    let good = UnivariateReduction::parse("hhat: x1^2 - 2\nh1: x1\nh2: 2\na1: 1\na2: 1").unwrap();
    let bad = UnivariateReduction::parse("hhat: x1^2 - 3\nh1: x1\nh2: 2\na1: 1\na2: 1").unwrap();
    println!("t^2 = 2 reduction valid: {}", verify_unired(&sys, &good));
    println!("t^2 = 3 reduction valid: {}", verify_unired(&sys, &bad));
    let b = unired_size_bounds(&sys, 1.0).unwrap();
    println!(
        "V_F = {}, deg hhat <= {}, sigma(hhat) <= {:.2}",
        b.v_f, b.hhat_degree_cap, b.hhat_sigma_cap
    );
}
