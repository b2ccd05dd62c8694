//! Randomized decisions on a solvable and an unsolvable system.

use kamhn::kamhn::{
    amplify, bad_t_values, gen_elkies, kamhn_decide, Answer, DEFAULT_DECIDE_BUDGET,
};
use kamhn::nullcert::{stride_constants, StrideConfig};
use kamhn::poly::parse_system;

fn main() {
    let cfg = StrideConfig::manual(2, 4, 2);
    let solvable = parse_system("x1^2 - 2*x2\nx2 - 8").unwrap();
    let sc = stride_constants(&solvable, None, &cfg).unwrap();
    let d = kamhn_decide(&solvable, &sc, 1, DEFAULT_DECIDE_BUDGET);
    println!(
        "x1^2 = 2 x2, x2 = 8: {:?} at t={} witness {:?}",
        d.answer, d.t_chosen, d.witness
    );

    let elkies = gen_elkies(2).unwrap();
    let sc = stride_constants(&elkies, None, &cfg).unwrap();
    let bad: Vec<u64> = bad_t_values(&elkies, &sc, DEFAULT_DECIDE_BUDGET)
        .into_iter()
        .filter(|(_, a)| *a == Answer::HasComplexRoot)
        .map(|(t, _)| t)
        .collect();
    println!("Elkies n=2: t values giving a false positive {bad:?} of 13");
    for seed in 0..5 {
        let once = kamhn_decide(&elkies, &sc, seed, DEFAULT_DECIDE_BUDGET);
        let amp = amplify(&elkies, &sc, 5, seed, DEFAULT_DECIDE_BUDGET);
        println!(
            "seed {seed}: single {:?} (t={}), 5 rounds {:?}",
            once.answer, once.t_chosen, amp.answer
        );
    }
}
