//! Étale algebras `Q[x]/<f>` for square-free `f`, read through the
//! factorization pattern of `f mod p`.
//!
//! Counting works with the order `Z[x]/<f>`: a prime `p` is treated as
//! ramified when it divides `lc(f) * disc(f)`, and `|disc(f)|` stands in for
//! the field discriminant wherever one is needed.
//!
//! Log-weighted counts (`psi`, `theta`) are carried as exact integer weights
//! per prime and only turned into floating point at the end, so merging
//! partial results from parallel chunks is exact.

mod bounds;
mod zeros;

pub use bounds::{
    disc_log_bound, dzh_exponent, dzh_rhs, gipit_exponent, gipit_probe, log_clamp, rho_sum_bound,
    uwepit_tail, uwesipit_tail, GipitProbe, TailConstants, UWEPIT, UWESIPIT,
};
pub use zeros::{load_zero_table, psi_explicit, s_trunc, ZeroTable, ZeroTableError};

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::modp::{degree_profile_with, DegreeProfile};
use crate::poly::{discriminant, squarefree_part, Poly, UniPoly};
use crate::primes::{primes_up_to, SegmentedSieve};

/// Largest `x` the counting functions will sieve up to by default.
pub const DEFAULT_COUNT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FieldError {
    #[error("defining polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("{name} = {value} violates the requirement {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("counting up to {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: f64, budget: u64 },
}

fn domain(name: &'static str, value: f64, requirement: &'static str) -> FieldError {
    FieldError::Domain {
        name,
        value,
        requirement,
    }
}

/// `K = Q[x]/<f>` with `f` square-free and primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleField {
    f: UniPoly,
    disc: BigInt,
    lc_disc: BigInt,
    excluded: Vec<u64>,
    excluded_big: Vec<BigUint>,
}

impl EtaleField {
    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    pub fn n_k(&self) -> usize {
        self.f.degree().expect("nonconstant")
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `lc(f) * disc(f)`.
    pub fn lc_disc(&self) -> &BigInt {
        &self.lc_disc
    }

    /// Prime divisors of `lc(f) * disc(f)`, ascending.
    pub fn excluded(&self) -> &[BigUint] {
        &self.excluded_big
    }

    /// `ln |disc(f)|`.
    pub fn log_d(&self) -> f64 {
        ln_big(&self.disc)
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.excluded.binary_search(&p).is_ok()
    }

    pub fn profile(&self, p: u64) -> DegreeProfile {
        degree_profile_with(&self.f, p, &self.lc_disc)
            .expect("a primitive polynomial never vanishes mod p")
    }
}

/// Natural log of `|v|` for arbitrarily large integers.
pub(crate) fn ln_big(v: &BigInt) -> f64 {
    let a = v.abs();
    let bits = a.bits();
    if bits <= 1000 {
        return a.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = &a >> shift;
    top.to_f64().expect("64-bit head").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Replaces `f` by its primitive square-free part and records the discriminant data.
pub fn make_field(f: &UniPoly) -> Result<EtaleField, FieldError> {
    if f.is_constant() {
        return Err(FieldError::ConstantPolynomial);
    }
    let mut g = squarefree_part(f).map_err(|_| FieldError::ConstantPolynomial)?;
    if g.lc().is_negative() {
        g = g.neg();
    }
    let disc = discriminant(&g).map_err(|_| FieldError::ConstantPolynomial)?;
    let lc_disc = g.lc() * &disc;
    let excluded_big =
        crate::primes::prime_factors(&lc_disc.abs().to_biguint().expect("nonnegative"));
    let excluded = excluded_big
        .iter()
        .filter_map(ToPrimitive::to_u64)
        .collect();
    Ok(EtaleField {
        f: g,
        disc,
        lc_disc,
        excluded,
        excluded_big,
    })
}

/// Accepts a polynomial in one variable (the declared variable count may be larger).
pub fn make_field_from_poly(f: &Poly) -> Result<EtaleField, FieldError> {
    make_field(&f.to_univariate().ok_or(FieldError::NotUnivariate)?)
}

/// `sum w_p * ln p` with exact integer weights `w_p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogSum(BTreeMap<u64, u64>);

impl LogSum {
    pub fn add(&mut self, p: u64, w: u64) {
        if w > 0 {
            *self.0.entry(p).or_insert(0) += w;
        }
    }

    pub fn merge(mut self, other: LogSum) -> LogSum {
        for (p, w) in other.0 {
            self.add(p, w);
        }
        self
    }

    /// Kahan-compensated sum in ascending prime order.
    pub fn value(&self) -> f64 {
        kahan(self.0.iter().map(|(&p, &w)| w as f64 * (p as f64).ln()))
    }
}

pub(crate) fn kahan(it: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for v in it {
        let y = v - c;
        let t = s + y;
        c = (t - s) - y;
        s = t;
    }
    s
}

/// Exact aggregate over a set of primes; merging is associative and commutative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountDelta {
    pub n_f: u64,
    pub pi1: u64,
    pub pi_k: u64,
    pub theta: LogSum,
    pub psi: LogSum,
}

impl CountDelta {
    pub fn merge(self, o: CountDelta) -> CountDelta {
        CountDelta {
            n_f: self.n_f + o.n_f,
            pi1: self.pi1 + o.pi1,
            pi_k: self.pi_k + o.pi_k,
            theta: self.theta.merge(o.theta),
            psi: self.psi.merge(o.psi),
        }
    }

    fn prime(field: &EtaleField, p: u64, x: u64) -> CountDelta {
        let prof = field.profile(p);
        let mut d = CountDelta {
            n_f: prof.linear() as u64,
            ..Default::default()
        };
        if prof.ramified {
            return d;
        }
        for (&deg, &cnt) in &prof.entries {
            let cnt = cnt as u64;
            let deg32 = u32::try_from(deg).unwrap_or(u32::MAX);
            let Some(norm) = p.checked_pow(deg32).filter(|&n| n <= x) else {
                continue;
            };
            d.pi_k += cnt;
            if deg == 1 {
                d.pi1 += cnt;
            }
            d.theta.add(p, cnt * deg as u64);
            let mut q = norm;
            loop {
                d.psi.add(p, cnt * deg as u64);
                match q.checked_mul(norm) {
                    Some(n) if n <= x => q = n,
                    _ => break,
                }
            }
        }
        d
    }
}

/// Values of the five counting functions at `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountSnapshot {
    #[serde(serialize_with = "crate::report::real_ser")]
    pub x: f64,
    pub n_f: u64,
    pub pi1: u64,
    pub pi_k: u64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub psi_k: f64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub theta_k: f64,
}

impl CountSnapshot {
    fn from_delta(x: f64, d: &CountDelta) -> Self {
        CountSnapshot {
            x,
            n_f: d.n_f,
            pi1: d.pi1,
            pi_k: d.pi_k,
            psi_k: d.psi.value(),
            theta_k: d.theta.value(),
        }
    }
}

fn check_x(x: f64, budget: u64) -> Result<u64, FieldError> {
    if !(x >= 2.0) {
        return Err(domain("x", x, "x >= 2"));
    }
    if x > budget as f64 {
        return Err(FieldError::BudgetExceeded { needed: x, budget });
    }
    Ok(x.floor() as u64)
}

/// Single sequential pass over the primes `p <= x`.
pub fn counts(field: &EtaleField, x: f64) -> Result<CountSnapshot, FieldError> {
    counts_with_budget(field, x, DEFAULT_COUNT_BUDGET)
}

pub fn counts_with_budget(
    field: &EtaleField,
    x: f64,
    budget: u64,
) -> Result<CountSnapshot, FieldError> {
    let xi = check_x(x, budget)?;
    let total = SegmentedSieve::new(2, xi)
        .map(|p| CountDelta::prime(field, p, xi))
        .fold(CountDelta::default(), CountDelta::merge);
    Ok(CountSnapshot::from_delta(x, &total))
}

/// Same result as [`counts`], computed over chunks of `chunk` primes in parallel.
pub fn counts_par(field: &EtaleField, x: f64, chunk: usize) -> Result<CountSnapshot, FieldError> {
    let xi = check_x(x, DEFAULT_COUNT_BUDGET)?;
    let primes = primes_up_to(xi);
    let total = primes
        .par_chunks(chunk.max(1))
        .map(|ps| {
            ps.iter()
                .map(|&p| CountDelta::prime(field, p, xi))
                .fold(CountDelta::default(), CountDelta::merge)
        })
        .reduce(CountDelta::default, CountDelta::merge);
    Ok(CountSnapshot::from_delta(x, &total))
}

/// Counting functions at every integer `2 <= x <= limit`, built from one
/// parallel pass of degree profiles.
#[derive(Clone, Debug)]
pub struct CountSeries {
    limit: u64,
    n_f: Vec<u64>,
    pi1: Vec<u64>,
    pi_k: Vec<u64>,
    psi: Vec<f64>,
    theta: Vec<f64>,
}

impl CountSeries {
    pub fn build(field: &EtaleField, limit: u64) -> Result<Self, FieldError> {
        let xi = check_x(limit as f64, DEFAULT_COUNT_BUDGET)?;
        let n = xi as usize + 1;
        let profiles: Vec<(u64, DegreeProfile)> = primes_up_to(xi)
            .into_par_iter()
            .map(|p| (p, field.profile(p)))
            .collect();
        let mut n_f = vec![0u64; n];
        let mut pi1 = vec![0u64; n];
        let mut pi_k = vec![0u64; n];
        // per-x increments as exact (prime, weight) pairs
        let mut theta_ev: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n];
        let mut psi_ev: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n];
        for (p, prof) in &profiles {
            let p = *p;
            n_f[p as usize] += prof.linear() as u64;
            if prof.ramified {
                continue;
            }
            for (&deg, &cnt) in &prof.entries {
                let (cnt, deg64) = (cnt as u64, deg as u64);
                let Some(norm) = p.checked_pow(deg as u32).filter(|&v| v <= xi) else {
                    continue;
                };
                pi_k[norm as usize] += cnt;
                if deg == 1 {
                    pi1[norm as usize] += cnt;
                }
                theta_ev[norm as usize].push((p, cnt * deg64));
                let mut q = norm;
                loop {
                    psi_ev[q as usize].push((p, cnt * deg64));
                    match q.checked_mul(norm) {
                        Some(v) if v <= xi => q = v,
                        _ => break,
                    }
                }
            }
        }
        for v in [&mut n_f, &mut pi1, &mut pi_k] {
            for i in 1..n {
                v[i] += v[i - 1];
            }
        }
        let prefix = |ev: &[Vec<(u64, u64)>]| {
            let (mut s, mut c) = (0.0f64, 0.0f64);
            ev.iter()
                .map(|e| {
                    for &(p, w) in e {
                        let y = w as f64 * (p as f64).ln() - c;
                        let t = s + y;
                        c = (t - s) - y;
                        s = t;
                    }
                    s
                })
                .collect::<Vec<f64>>()
        };
        let psi = prefix(&psi_ev);
        let theta = prefix(&theta_ev);
        Ok(CountSeries {
            limit: xi,
            n_f,
            pi1,
            pi_k,
            psi,
            theta,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Snapshot at integer `x`, `2 <= x <= limit`.
    pub fn at(&self, x: u64) -> CountSnapshot {
        assert!(
            (2..=self.limit).contains(&x),
            "x = {x} outside the series range"
        );
        let i = x as usize;
        CountSnapshot {
            x: x as f64,
            n_f: self.n_f[i],
            pi1: self.pi1[i],
            pi_k: self.pi_k[i],
            psi_k: self.psi[i],
            theta_k: self.theta[i],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> EtaleField {
        make_field(&UniPoly::from_i64(c)).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn make_field_examples() {
        let k = field(&[1, 0, 1]);
        assert_eq!((k.n_k(), k.disc().clone()), (2, BigInt::from(-4)));
        assert_eq!(k.excluded(), big(&[2]).as_slice());
        let k = field(&[-5, 0, 1]);
        assert_eq!((k.n_k(), k.disc().clone()), (2, BigInt::from(20)));
        assert_eq!(k.excluded(), big(&[2, 5]).as_slice());
        let q = field(&[0, 1]);
        assert_eq!((q.n_k(), q.disc().clone()), (1, BigInt::from(1)));
        assert!(q.excluded().is_empty());
        assert_eq!(q.log_d(), 0.0);
        assert_eq!(
            make_field(&UniPoly::from_i64(&[7])),
            Err(FieldError::ConstantPolynomial)
        );
    }

    #[test]
    fn make_field_takes_squarefree_part() {
        // (x - 1)^2 (x + 2) -> (x - 1)(x + 2)
        let f = UniPoly::from_i64(&[-1, 1])
            .mul(&UniPoly::from_i64(&[-1, 1]))
            .mul(&UniPoly::from_i64(&[2, 1]));
        let k = make_field(&f).unwrap();
        assert_eq!(k.f(), &UniPoly::from_i64(&[-2, 1, 1]));
        assert_eq!(k.disc(), &BigInt::from(9));
    }

    #[test]
    fn counts_examples() {
        let k = field(&[1, 0, 1]);
        let s = counts(&k, 10.0).unwrap();
        assert_eq!((s.n_f, s.pi1, s.pi_k), (3, 2, 3));
        let expect = 2.0 * 5f64.ln() + 9f64.ln();
        assert!((s.theta_k - expect).abs() < 1e-12);
        assert!((s.psi_k - expect).abs() < 1e-12);
        let s = counts(&k, 3.0).unwrap();
        assert_eq!((s.n_f, s.pi1, s.pi_k), (1, 0, 0));
        let q = field(&[0, 1]);
        let s = counts(&q, 10.0).unwrap();
        let psi10 = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((s.psi_k - psi10).abs() < 1e-12);
        assert!(matches!(counts(&q, 1.5), Err(FieldError::Domain { .. })));
        assert!(matches!(
            counts_with_budget(&q, 1e6, 1000),
            Err(FieldError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parallel_and_series_agree() {
        let k = field(&[-2, 0, 0, 1]);
        let seq = counts(&k, 5000.0).unwrap();
        assert_eq!(counts_par(&k, 5000.0, 37).unwrap(), seq);
        let series = CountSeries::build(&k, 5000).unwrap();
        let at = series.at(5000);
        assert_eq!((at.n_f, at.pi1, at.pi_k), (seq.n_f, seq.pi1, seq.pi_k));
        assert!((at.psi_k - seq.psi_k).abs() < 1e-9 * seq.psi_k);
        let s10 = CountSeries::build(&field(&[1, 0, 1]), 10).unwrap().at(10);
        assert_eq!((s10.n_f, s10.pi1, s10.pi_k), (3, 2, 3));
    }

    #[test]
    fn ln_of_huge_integers() {
        let v = BigInt::from(1u8) << 5000u32;
        assert!((ln_big(&v) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
