//! Parse a system and report its sparse size, degree and support.

use kamhn::poly::parse_system;

fn main() {
    let text = "x1^2*x2 - 3*x2 + 7\nx1 - x2^3";
    let sys = parse_system(text).expect("valid system");
    println!("system:\n{sys}");
    println!("variables: {}", sys.nvars());
    println!("max degree: {}", sys.max_degree());
    println!("sparse size: {}", sys.sparse_size());
    for (i, f) in sys.polys().iter().enumerate() {
        println!("f{} uses variables {:?}", i + 1, f.support_vars());
    }
}
