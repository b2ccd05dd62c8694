//! Integer Nullstellensatz certificates and their size caps.

use kamhn::nullcert::{cert_search, check_cert, cool_bounds};
use kamhn::poly::parse_system;

fn main() {
    for text in [
        "x1\nx1 - 1",
        "x1^2 + 1\nx1 - 7",
        "x1^6 - 1\nx1 - 6",
        "x1*x2 - 1\nx1",
    ] {
        let sys = parse_system(text).unwrap();
        let b = cool_bounds(&sys, false).unwrap();
        let cap = u64::try_from(&b.deg_cap).unwrap().min(40);
        match cert_search(&sys, cap).unwrap() {
            Some(c) => {
                let check = check_cert(&sys, &c, Some(&b));
                let g: Vec<String> = c.g.iter().map(ToString::to_string).collect();
                println!(
                    "{}: a_F = {} with g = [{}]; valid {}",
                    text.replace('\n', ", "),
                    c.a_f,
                    g.join(", "),
                    check.valid()
                );
            }
            None => println!(
                "{}: no certificate up to degree {cap}",
                text.replace('\n', ", ")
            ),
        }
    }
    let unsolvable = parse_system("x1^2 - 2\nx1^2 + x1").unwrap();
    println!(
        "caps for x1^2 - 2, x1^2 + x1: {:?}",
        cool_bounds(&unsolvable, false).unwrap()
    );
}
