//! Normalized Newton-polytope volume of a system and of a few clouds.

use kamhn::newton::{normalized_volume, support_cloud, volume_upper_estimate, ExponentCloud};
use kamhn::poly::parse_system;

fn main() {
    let square = ExponentCloud::with_points(2, [vec![1, 1]]).unwrap();
    println!("unit square: {}", normalized_volume(&square).unwrap());

    let cube = ExponentCloud::with_points(
        3,
        [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]].map(Vec::from),
    )
    .unwrap();
    println!("unit cube: {}", normalized_volume(&cube).unwrap());

    let sys = parse_system("x1^3 + x2^2 - 1\nx1*x2 - 2").unwrap();
    let cloud = support_cloud(&sys).unwrap();
    println!("V_F exact: {}", normalized_volume(&cloud).unwrap());
    println!("V_F estimate max(D,1)^n: {}", volume_upper_estimate(&sys));
}
