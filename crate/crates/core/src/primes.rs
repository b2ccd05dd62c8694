//! Primality, segmented sieving over intervals, prime counting, primorials.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

/// Intervals ending at or below this bound are sieved; above it candidates
/// are tested one by one.
pub const SIEVE_LIMIT: u64 = 1 << 48;

/// Default cap on the number of candidates an interval may contain.
pub const DEFAULT_INTERVAL_BUDGET: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 16;

/// Miller-Rabin bases that decide primality for every `n < 2^64`.
const WITNESSES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Extra pseudo-random rounds above `2^64`; error below `4^-64 = 2^-128`.
const RANDOM_ROUNDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrimeError {
    #[error("empty interval: lower end {lo} is not below upper end {hi}")]
    EmptyInterval { lo: BigUint, hi: BigUint },
    #[error("interval holds {width} candidates, over the budget of {budget}")]
    BudgetExceeded { width: BigUint, budget: u64 },
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub(crate) fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64, d: u64, s: u32) -> bool {
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES_U64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    WITNESSES_U64
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a, d, s))
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let n1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Deterministic below `2^64`. Above, twelve fixed bases plus 64 bases drawn
/// from a SplitMix64 stream seeded by the low word of `n`; a composite passes
/// with probability below `2^-128`.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &WITNESSES_U64 {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    if !WITNESSES_U64
        .iter()
        .all(|&a| strong_probable_prime(n, &BigUint::from(a), &d, s))
    {
        return false;
    }
    let mut rng = SplitMix64::seed_from_u64(n.iter_u64_digits().next().unwrap_or(0));
    let span = n - 3u32;
    let words = n.bits().div_ceil(64) as usize + 1;
    (0..RANDOM_ROUNDS).all(|_| {
        let digits: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        let a = BigUint::from_slice(
            &digits
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        ) % &span
            + 2u32;
        strong_probable_prime(n, &a, &d, s)
    })
}

/// Half-open interval `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PrimeInterval {
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub lo: BigUint,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub hi: BigUint,
}

impl PrimeInterval {
    pub fn new(lo: BigUint, hi: BigUint) -> Result<Self, PrimeError> {
        if lo >= hi {
            return Err(PrimeError::EmptyInterval { lo, hi });
        }
        Ok(PrimeInterval { lo, hi })
    }

    /// `(t^c, (t+1)^c]`.
    pub fn power_stride(t: u64, c: u32) -> Self {
        let lo = num_traits::pow(BigUint::from(t), c as usize);
        let hi = num_traits::pow(BigUint::from(t) + 1u32, c as usize);
        PrimeInterval { lo, hi }
    }

    pub fn width(&self) -> BigUint {
        &self.hi - &self.lo
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        &self.lo < p && p <= &self.hi
    }
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Ascending stream of the primes in an interval.
pub enum PrimeStream {
    Sieve(SegmentedSieve),
    Scan { next: BigUint, hi: BigUint },
}

impl Iterator for PrimeStream {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        match self {
            PrimeStream::Sieve(s) => s.next().map(BigUint::from),
            PrimeStream::Scan { next, hi } => {
                while *next <= *hi {
                    let c = next.clone();
                    *next += 1u32;
                    if is_prime(&c) {
                        return Some(c);
                    }
                }
                None
            }
        }
    }
}

/// Segmented sieve of Eratosthenes over `[start, end]`.
pub struct SegmentedSieve {
    base: Vec<u64>,
    seg_lo: u64,
    end: u64,
    buf: Vec<bool>,
    idx: usize,
}

impl SegmentedSieve {
    pub fn new(start: u64, end: u64) -> Self {
        let start = start.max(2);
        let base = primes_up_to(end.sqrt());
        let mut s = SegmentedSieve {
            base,
            seg_lo: start,
            end,
            buf: Vec::new(),
            idx: 0,
        };
        s.fill();
        s
    }

    fn fill(&mut self) {
        self.buf.clear();
        self.idx = 0;
        if self.seg_lo > self.end {
            return;
        }
        let hi = self.end.min(self.seg_lo.saturating_add(SEGMENT - 1));
        let len = (hi - self.seg_lo + 1) as usize;
        self.buf.resize(len, true);
        for &p in &self.base {
            if p * p > hi {
                break;
            }
            let first = (p * p).max(self.seg_lo.div_ceil(p) * p);
            let mut m = first;
            while m <= hi {
                self.buf[(m - self.seg_lo) as usize] = false;
                m += p;
            }
        }
    }
}

impl Iterator for SegmentedSieve {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.buf.is_empty() {
                return None;
            }
            while self.idx < self.buf.len() {
                let i = self.idx;
                self.idx += 1;
                if self.buf[i] {
                    return Some(self.seg_lo + i as u64);
                }
            }
            let next_lo = self.seg_lo + self.buf.len() as u64;
            if next_lo > self.end || next_lo < self.seg_lo {
                self.buf.clear();
                return None;
            }
            self.seg_lo = next_lo;
            self.fill();
        }
    }
}

/// Primes `p` with `lo < p <= hi`, ascending. Fails if the interval holds more
/// than `budget` candidates.
pub fn primes_in(iv: &PrimeInterval, budget: u64) -> Result<PrimeStream, PrimeError> {
    let width = iv.width();
    if width > BigUint::from(budget) {
        return Err(PrimeError::BudgetExceeded { width, budget });
    }
    match iv.hi.to_u64() {
        Some(hi) if hi <= SIEVE_LIMIT => {
            let lo = iv.lo.to_u64().expect("lo < hi fits in u64");
            Ok(PrimeStream::Sieve(SegmentedSieve::new(lo + 1, hi)))
        }
        _ => Ok(PrimeStream::Scan {
            next: &iv.lo + 1u32,
            hi: iv.hi.clone(),
        }),
    }
}

/// Number of primes `<= x`.
pub fn pi(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    SegmentedSieve::new(2, x).count() as u64
}

/// Product of the first `n` primes.
pub fn primorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    let mut found = 0;
    let mut c: u64 = 2;
    while found < n {
        if is_prime_u64(c) {
            acc *= c;
            found += 1;
        }
        c += 1;
    }
    acc
}

fn pollard_brent(n: &BigUint, seed: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(seed % 1000 + 1);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32 + (seed % 7) as u32);
    let mut g = one.clone();
    let mut r: u64 = 1;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    const M: u64 = 64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..M.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += M;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    for seed in 1.. {
        if let Some(d) = pollard_brent(&n, seed) {
            let other = &n / &d;
            factor_into(d, out);
            factor_into(other, out);
            return;
        }
    }
}

/// Distinct prime divisors of `n > 0`, ascending.
pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut m = n.clone();
    if m.is_zero() {
        return out;
    }
    for p in primes_up_to(10_000) {
        if (&m % p).is_zero() {
            out.push(BigUint::from(p));
            while (&m % p).is_zero() {
                m /= p;
            }
        }
    }
    factor_into(m, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    fn collect(lo: u64, hi: u64) -> Vec<u64> {
        let iv = PrimeInterval::new(BigUint::from(lo), BigUint::from(hi)).unwrap();
        primes_in(&iv, DEFAULT_INTERVAL_BUDGET)
            .unwrap()
            .map(|p| p.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64((1 << 31) - 1));
        assert!(trial((1 << 31) - 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn big_primality() {
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        let comp = &m127 * BigUint::from(18_446_744_073_709_551_557u64);
        assert!(!is_prime(&comp));
        assert!(!is_prime(&((BigUint::one() << 128u32) + 1u32)));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(collect(16, 25), vec![17, 19, 23]);
        assert_eq!(collect(4, 9), vec![5, 7]);
        assert_eq!(collect(7, 8), Vec::<u64>::new());
        assert_eq!(collect(0, 2), vec![2]);
    }

    #[test]
    fn interval_errors() {
        assert!(PrimeInterval::new(BigUint::from(5u32), BigUint::from(5u32)).is_err());
        let iv = PrimeInterval::new(BigUint::zero(), BigUint::from(1000u32)).unwrap();
        assert!(matches!(
            primes_in(&iv, 999),
            Err(PrimeError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn scan_above_sieve_limit() {
        let lo = BigUint::from(SIEVE_LIMIT);
        let iv = PrimeInterval::new(lo.clone(), &lo + 200u32).unwrap();
        let got: Vec<_> = primes_in(&iv, 1000).unwrap().collect();
        assert!(!got.is_empty());
        for p in &got {
            assert!(is_prime_u64(p.to_u64().unwrap()));
        }
    }

    #[test]
    fn counting_and_primorials() {
        assert_eq!(pi(10), 4);
        assert_eq!(pi(100), 25);
        assert_eq!(pi(1), 0);
        assert_eq!(pi(2), 1);
        assert_eq!(primorial(1), BigUint::from(2u32));
        assert_eq!(primorial(2), BigUint::from(6u32));
        assert_eq!(primorial(4), BigUint::from(210u32));
    }

    #[test]
    fn factoring() {
        let f = prime_factors(&BigUint::from(46655u32));
        assert_eq!(f, [5u32, 7, 31, 43].map(BigUint::from).to_vec());
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64) * 4u32;
        assert_eq!(
            prime_factors(&n),
            vec![
                BigUint::from(2u32),
                BigUint::from(1_000_003u64),
                BigUint::from(998_244_353u64)
            ]
        );
        assert!(prime_factors(&BigUint::one()).is_empty());
    }
}
