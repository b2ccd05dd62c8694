//! The randomized root-existence test: pick `t` from `{t_F, ..., t_F + 3 a}`,
//! then look for a prime in `(t^C, (t+1)^C]` modulo which `F` has a root.
//!
//! The search for a good prime is done exhaustively within a budget; when
//! the budget is hit the answer is `AbortUnknown`, never a guess.
//!
//! # Randomness
//!
//! Draws come from SplitMix64 (`state += 0x9E3779B97F4A7C15`, then the
//! standard two-multiply finalizer), seeded with the user's 64-bit seed. A
//! uniform value in `{0, ..., m-1}` is the first output `x` with
//! `x < floor(2^64 / m) * m`, reduced mod `m`. Amplification round `i` uses
//! seed `seed + i * 0x9E3779B97F4A7C15` (wrapping), so round 0 repeats a
//! single decision exactly.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use crate::modp::{eval_mod, system_has_root, RootSearch};
use crate::nullcert::{cert_search, cool_bounds, divisor_count_bound, StrideConstants};
use crate::poly::{Poly, PolySystem};
use crate::primes::{primes_in, primes_up_to, primorial, PrimeInterval};

/// Default bound on both the interval width and `p^n` for exhaustive search.
pub const DEFAULT_DECIDE_BUDGET: u64 = 10_000_000;

/// Largest exponent `gen_elkies` will build.
pub const ELKIES_MAX_DEGREE: u64 = 10_000_000;

pub const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Answer {
    HasComplexRoot,
    NoComplexRoot,
    AbortUnknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub p: u64,
    pub point: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub answer: Answer,
    pub t_chosen: u64,
    pub interval: PrimeInterval,
    pub witness: Option<Witness>,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub seed: u64,
    /// Primes examined in the final round.
    pub trials: u64,
    pub rounds: u32,
    /// `a / (3a + 1)`: the largest fraction of `t` in range that can be bad.
    #[serde(serialize_with = "crate::report::real_ser")]
    pub configured_bad_fraction_bound: f64,
    pub diagnostics: Vec<String>,
}

/// Uniform draw from `{lo, ..., lo + span - 1}`, `span >= 1`.
fn uniform(rng: &mut SplitMix64, lo: u64, span: u128) -> u64 {
    let limit = (1u128 << 64) / span * span;
    loop {
        let x = u128::from(rng.next_u64());
        if x < limit {
            return lo + (x % span) as u64;
        }
    }
}

/// `{t_F, ..., t_F + 3 a}` as `(first, count)`.
pub fn t_range(sc: &StrideConstants) -> (u64, u128) {
    (sc.t_f, 3 * u128::from(sc.a_count) + 1)
}

/// The `t` drawn for `seed`.
pub fn draw_t(sc: &StrideConstants, seed: u64) -> u64 {
    let (lo, span) = t_range(sc);
    uniform(&mut SplitMix64::seed_from_u64(seed), lo, span)
}

/// `a / (3a + 1)` for the configured `a`.
pub fn bad_fraction_bound(sc: &StrideConstants) -> f64 {
    let a = sc.a_count as f64;
    a / (3.0 * a + 1.0)
}

fn c_exponent(sc: &StrideConstants) -> Option<u32> {
    u32::try_from(sc.c_f).ok()
}

/// Runs the prime search for a fixed `t`.
pub fn decide_at(system: &PolySystem, sc: &StrideConstants, t: u64, budget: u64) -> Decision {
    let mut d = Decision {
        answer: Answer::AbortUnknown,
        t_chosen: t,
        interval: PrimeInterval {
            lo: BigUint::from(0u32),
            hi: BigUint::from(0u32),
        },
        witness: None,
        seed: 0,
        trials: 0,
        rounds: 1,
        configured_bad_fraction_bound: bad_fraction_bound(sc),
        diagnostics: Vec::new(),
    };
    let Some(c) = c_exponent(sc) else {
        d.diagnostics
            .push(format!("C_F = {} is too large to form t^C_F", sc.c_f));
        return d;
    };
    d.interval = PrimeInterval::power_stride(t, c);
    let stream = match primes_in(&d.interval, budget) {
        Ok(s) => s,
        Err(e) => {
            d.diagnostics.push(format!("interval: {e}"));
            return d;
        }
    };
    for p in stream {
        d.trials += 1;
        let Some(p) = p.to_u64() else {
            d.diagnostics.push(format!("prime {p} exceeds 64 bits"));
            return d;
        };
        match system_has_root(system, p, budget) {
            RootSearch::Yes(point) => {
                debug_assert!(system.polys().iter().all(|f| eval_mod(f, &point, p) == 0));
                d.answer = Answer::HasComplexRoot;
                d.witness = Some(Witness { p, point });
                return d;
            }
            RootSearch::No => {}
            RootSearch::Unknown => {
                d.diagnostics
                    .push(format!("root search mod {p} exceeds the budget {budget}"));
                return d;
            }
        }
    }
    d.answer = Answer::NoComplexRoot;
    d
}

/// One run: draw `t` from the seed, then search its interval.
pub fn kamhn_decide(system: &PolySystem, sc: &StrideConstants, seed: u64, budget: u64) -> Decision {
    let mut d = decide_at(system, sc, draw_t(sc, seed), budget);
    d.seed = seed;
    d
}

/// Repeats the decision with derived seeds; any `NoComplexRoot` is final and
/// any abort is returned as is.
pub fn amplify(
    system: &PolySystem,
    sc: &StrideConstants,
    rounds: u32,
    seed: u64,
    budget: u64,
) -> Decision {
    assert!(rounds >= 1, "at least one round");
    let mut last = None;
    for i in 0..rounds {
        let s = seed.wrapping_add(u64::from(i).wrapping_mul(SEED_STRIDE));
        let mut d = kamhn_decide(system, sc, s, budget);
        d.rounds = i + 1;
        d.seed = seed;
        if d.answer != Answer::HasComplexRoot {
            return d;
        }
        last = Some(d);
    }
    last.expect("rounds >= 1")
}

/// Re-checks a witness by direct evaluation.
pub fn verify_witness(system: &PolySystem, w: &Witness) -> bool {
    crate::primes::is_prime_u64(w.p)
        && w.point.len() == system.nvars()
        && system
            .polys()
            .iter()
            .all(|f| eval_mod(f, &w.point, w.p) == 0)
}

/// The decision at every `t` in range, in order.
pub fn bad_t_values(system: &PolySystem, sc: &StrideConstants, budget: u64) -> Vec<(u64, Answer)> {
    let (lo, span) = t_range(sc);
    (0..span as u64)
        .into_par_iter()
        .map(|i| (lo + i, decide_at(system, sc, lo + i, budget).answer))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub bound: u64,
    pub bad_primes: Vec<u64>,
    pub count: usize,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub a_count_bound: u64,
    pub within_bound: bool,
    /// Primes where the root search hit the budget.
    pub unknown_primes: Vec<u64>,
    pub complete: bool,
}

/// Every prime `p <= bound` modulo which `F` has a root.
pub fn prime_census(
    system: &PolySystem,
    bound: u64,
    budget: u64,
    a_count_bound: u64,
) -> CensusReport {
    let results: Vec<(u64, RootSearch)> = primes_up_to(bound)
        .into_par_iter()
        .map(|p| (p, system_has_root(system, p, budget)))
        .collect();
    let bad_primes: Vec<u64> = results
        .iter()
        .filter(|(_, r)| r.is_yes())
        .map(|(p, _)| *p)
        .collect();
    let unknown_primes: Vec<u64> = results
        .iter()
        .filter(|(_, r)| *r == RootSearch::Unknown)
        .map(|(p, _)| *p)
        .collect();
    CensusReport {
        bound,
        count: bad_primes.len(),
        within_bound: bad_primes.len() as u64 <= a_count_bound,
        complete: unknown_primes.is_empty(),
        bad_primes,
        a_count_bound,
        unknown_primes,
    }
}

/// `1 + floor(ln a_F)` from a certificate when one is found at the cool-bounds
/// degree cap within the matrix budget, else from the height cap.
pub fn default_a_count(system: &PolySystem) -> u64 {
    let Ok(b) = cool_bounds(system, true) else {
        return u64::MAX;
    };
    if let Some(cap) = b.deg_cap.to_u64() {
        if let Ok(Some(cert)) = cert_search(system, cap) {
            return divisor_count_bound(&cert.a_f);
        }
    }
    let ln = b.sigma_af_cap.to_f64().unwrap_or(f64::INFINITY) * std::f64::consts::LN_2;
    if ln < (u64::MAX - 1) as f64 {
        1 + ln.floor() as u64
    } else {
        u64::MAX
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KamhnError {
    #[error("n must be at least 1")]
    ZeroIndex,
    #[error("primorial {0} exceeds the degree budget {ELKIES_MAX_DEGREE}")]
    Budget(BigUint),
}

/// `(x1^P - 1, x1 - P)` with `P` the product of the first `n` primes. The
/// system has no complex root, yet has a root mod every prime dividing `P^P - 1`.
pub fn gen_elkies(n: usize) -> Result<PolySystem, KamhnError> {
    if n == 0 {
        return Err(KamhnError::ZeroIndex);
    }
    let p = primorial(n);
    let e = p
        .to_u64()
        .filter(|&e| e <= ELKIES_MAX_DEGREE)
        .ok_or_else(|| KamhnError::Budget(p.clone()))?;
    let pb = BigInt::from(p);
    let f1 = Poly::from_terms(1, [(BigInt::from(1), vec![e]), (BigInt::from(-1), vec![0])]);
    let f2 = Poly::from_terms(1, [(BigInt::from(1), vec![1]), (-pb, vec![0])]);
    Ok(PolySystem::new(1, vec![f1, f2]).expect("two univariate members"))
}
