//! Polynomials over `Z/pZ`: distinct-root counts, distinct-degree profiles
//! and root search for systems reduced mod `p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::{discriminant, Poly, PolySystem, UniPoly};
use crate::primes::pow_mod_u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModpError {
    #[error("polynomial vanishes identically mod {0}")]
    DegeneratePrime(u64),
}

pub(crate) fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_u64(a, p - 2, p)
}

/// Dense polynomial over `Z/pZ`, coefficients from degree 0, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                Self::new(
                    self.p,
                    self.coeffs
                        .iter()
                        .map(|&c| mul_mod(c, inv, self.p))
                        .collect(),
                )
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - mul_mod(c, dc, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m);
            }
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        let f = self.monic();
        if f.deg0() == 0 {
            return Self::one(self.p);
        }
        let d = f.derivative();
        if d.is_zero() {
            // f(x) = g(x^p), and g(x)^p = g(x^p) over F_p
            let g: Vec<u64> = f.coeffs.iter().step_by(self.p as usize).copied().collect();
            return Self::new(self.p, g).radical();
        }
        let g = f.gcd(&d);
        let w = f.div_rem(&g).0;
        if g.deg0() == 0 {
            return w;
        }
        let r = g.radical();
        let common = w.gcd(&r);
        w.mul(&r).div_rem(&common).0.monic()
    }
}

/// Coefficientwise reduction; the degree drops if `p` divides the leading coefficient.
pub fn reduce(f: &UniPoly, p: u64) -> PolyModP {
    PolyModP::new(p, f.coeffs().iter().map(|c| residue(c, p)).collect())
}

/// `gcd(x^p - x, g)` for nonzero `g`: the product of its distinct linear factors.
fn linear_part(g: &PolyModP) -> PolyModP {
    let p = g.p;
    if g.deg0() == 0 {
        return PolyModP::one(p);
    }
    let xp = PolyModP::x(p).pow_mod(p, g);
    g.gcd(&xp.sub(&PolyModP::x(p).rem(g)))
}

/// Number of distinct roots of `f` in `Z/pZ`.
pub fn count_distinct_roots(f: &UniPoly, p: u64) -> Result<usize, ModpError> {
    let g = reduce(f, p);
    if g.is_zero() {
        return Err(ModpError::DegeneratePrime(p));
    }
    Ok(linear_part(&g).deg0())
}

/// Distinct-degree counts of the irreducible factors of the square-free part
/// of `f mod p`, with a flag for primes dividing `lc(f) * disc(f)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeProfile {
    pub p: u64,
    pub entries: BTreeMap<usize, usize>,
    pub ramified: bool,
}

impl DegreeProfile {
    pub fn linear(&self) -> usize {
        self.entries.get(&1).copied().unwrap_or(0)
    }

    /// `sum d * count_d`.
    pub fn degree_sum(&self) -> usize {
        self.entries.iter().map(|(d, c)| d * c).sum()
    }
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn ddf_counts(h: &PolyModP) -> BTreeMap<usize, usize> {
    let p = h.p;
    let mut entries = BTreeMap::new();
    let mut rest = h.clone();
    let x = PolyModP::x(p);
    let mut xpi = x.rem(&rest);
    let mut i = 1;
    while rest.deg0() >= 2 * i {
        xpi = xpi.pow_mod(p, &rest);
        let g = rest.gcd(&xpi.sub(&x));
        let dg = g.deg0();
        if dg > 0 {
            entries.insert(i, dg / i);
            rest = rest.div_rem(&g).0;
            xpi = xpi.rem(&rest);
        }
        i += 1;
    }
    if rest.deg0() > 0 {
        *entries.entry(rest.deg0()).or_insert(0) += 1;
    }
    entries
}

/// Profile with `lc(f) * disc(f)` supplied by the caller.
pub fn degree_profile_with(
    f: &UniPoly,
    p: u64,
    lc_disc: &BigInt,
) -> Result<DegreeProfile, ModpError> {
    let g = reduce(f, p);
    if g.is_zero() {
        return Err(ModpError::DegeneratePrime(p));
    }
    Ok(DegreeProfile {
        p,
        entries: ddf_counts(&g.radical()),
        ramified: residue(lc_disc, p) == 0,
    })
}

pub fn degree_profile(f: &UniPoly, p: u64) -> Result<DegreeProfile, ModpError> {
    let lc_disc = match f.degree() {
        Some(d) if d >= 1 => f.lc() * discriminant(f).expect("degree >= 1"),
        _ => f.lc(),
    };
    degree_profile_with(f, p, &lc_disc)
}

/// One root of a polynomial that splits into distinct linear factors.
fn split_root(g: &PolyModP) -> u64 {
    let p = g.p;
    let g = g.monic();
    match g.deg0() {
        0 => unreachable!("split_root needs a nonconstant polynomial"),
        1 => return (p - g.coeffs[0]) % p,
        _ => {}
    }
    if p <= 3 {
        return (0..p)
            .find(|&r| g.eval(r) == 0)
            .expect("a linear factor exists");
    }
    for a in 0..p {
        let shifted = PolyModP::new(p, vec![a, 1]);
        let t = shifted.pow_mod((p - 1) / 2, &g).sub(&PolyModP::one(p));
        let h = g.gcd(&t);
        let dh = h.deg0();
        if dh > 0 && dh < g.deg0() {
            return split_root(&h);
        }
    }
    unreachable!("equal-degree splitting always succeeds for some shift")
}

/// Outcome of a root search mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSearch {
    Yes(Vec<u64>),
    No,
    Unknown,
}

impl RootSearch {
    pub fn is_yes(&self) -> bool {
        matches!(self, RootSearch::Yes(_))
    }
}

fn reduce_terms(f: &Poly, p: u64) -> Vec<(u64, &[u64])> {
    f.terms()
        .iter()
        .map(|t| (residue(&t.coeff, p), t.exps.as_slice()))
        .filter(|(c, _)| *c != 0)
        .collect()
}

/// Evaluates `f` at a point of `(Z/pZ)^n`.
pub fn eval_mod(f: &Poly, point: &[u64], p: u64) -> u64 {
    f.terms().iter().fold(0, |acc, t| {
        let mut v = residue(&t.coeff, p);
        for (&x, &e) in point.iter().zip(&t.exps) {
            if e > 0 {
                v = mul_mod(v, pow_mod_u64(x, e, p), p);
            }
        }
        (acc + v) % p
    })
}

/// Walks all of `(Z/pZ)^n` in lexicographic order; returns the first root.
/// `None` if no root exists or `p^n` exceeds `budget`.
pub fn exhaustive_root(system: &PolySystem, p: u64, budget: u64) -> Option<Option<Vec<u64>>> {
    let n = system.nvars();
    let total = (p as u128).checked_pow(n as u32)?;
    if total > u128::from(budget) {
        return None;
    }
    let mut point = vec![0u64; n];
    loop {
        if system.polys().iter().all(|f| eval_mod(f, &point, p) == 0) {
            return Some(Some(point));
        }
        // odometer, last coordinate fastest
        let mut j = n;
        loop {
            if j == 0 {
                return Some(None);
            }
            j -= 1;
            point[j] += 1;
            if point[j] < p {
                break;
            }
            point[j] = 0;
        }
    }
}

/// Decides whether `F mod p` has a root in `(Z/pZ)^n`.
///
/// Members that vanish mod `p` are dropped. If the rest involve at most one
/// variable, the answer comes from the gcd of their reductions; otherwise an
/// exhaustive search runs when `p^n <= budget`, and `Unknown` is returned
/// beyond that.
pub fn system_has_root(system: &PolySystem, p: u64, budget: u64) -> RootSearch {
    let n = system.nvars();
    let reduced: Vec<Vec<(u64, &[u64])>> = system
        .polys()
        .iter()
        .map(|f| reduce_terms(f, p))
        .filter(|ts| !ts.is_empty())
        .collect();
    if reduced.is_empty() {
        return RootSearch::Yes(vec![0; n]);
    }
    if reduced
        .iter()
        .any(|ts| ts.iter().all(|(_, e)| e.iter().all(|&x| x == 0)))
    {
        return RootSearch::No;
    }
    let mut vars: Vec<usize> = reduced
        .iter()
        .flat_map(|ts| {
            ts.iter()
                .flat_map(|(_, e)| (0..n).filter(move |&j| e[j] > 0))
        })
        .collect();
    vars.sort_unstable();
    vars.dedup();
    if let [j] = vars.as_slice() {
        let mut g = PolyModP::new(p, Vec::new());
        for ts in &reduced {
            let deg = ts.iter().map(|(_, e)| e[*j]).max().unwrap_or(0) as usize;
            let mut c = vec![0u64; deg + 1];
            for (coef, e) in ts {
                let k = e[*j] as usize;
                c[k] = (c[k] + coef) % p;
            }
            g = g.gcd(&PolyModP::new(p, c));
        }
        let lin = linear_part(&g);
        if lin.deg0() == 0 {
            return RootSearch::No;
        }
        let mut point = vec![0; n];
        point[*j] = split_root(&lin);
        return RootSearch::Yes(point);
    }
    match exhaustive_root(system, p, budget) {
        Some(Some(pt)) => RootSearch::Yes(pt),
        Some(None) => RootSearch::No,
        None => RootSearch::Unknown,
    }
}
