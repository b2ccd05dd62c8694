//! Integer Nullstellensatz certificates `sum f_i g_i = a_F` found by lattice
//! echelon form.
//!
//! The multiples `f_i * m` (with `m` ranging over monomials of degree at most
//! the cap) generate a lattice in coefficient space. Coordinates are ordered
//! by descending graded lex, so the constant coordinate comes last. In an
//! integer echelon basis of that lattice, the only vector that can be
//! supported on the constant coordinate alone is the one pivoting there, and
//! its value generates every integer constant reachable at this degree cap.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::CoolBounds;
use crate::poly::{grlex, int_size, Poly, PolySystem};

/// Largest matrix (rows times columns) `cert_search` will build by default.
pub const DEFAULT_MATRIX_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("coefficient matrix needs {needed} entries, budget is {budget}")]
    MatrixBudget { needed: u128, budget: u64 },
    #[error("dimension {dim} exceeds the exact-volume cap {cap}; pass the estimate flag to use max(D,1)^n")]
    DimensionCap { dim: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "ser_polys")]
    pub g: Vec<Poly>,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub a_f: BigInt,
    pub deg_cap: u64,
}

fn ser_polys<S: serde::Serializer>(g: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(g.iter().map(ToString::to_string))
}

/// Number of monomials of degree `<= d` in `n` variables, saturating.
fn monomial_count(n: usize, d: u64) -> u128 {
    // C(d + n, n)
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = match acc.checked_mul(u128::from(d) + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

fn monomials_up_to(n: usize, d: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Echelon basis vector: `value = sum combo[c] * column[c]`, pivot at its first nonzero.
struct Row {
    value: Vec<BigInt>,
    combo: Vec<BigInt>,
}

fn lin(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

fn pivot(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

/// Inserts `(value, combo)` into the echelon basis keyed by pivot.
fn insert(basis: &mut HashMap<usize, Row>, mut value: Vec<BigInt>, mut combo: Vec<BigInt>) {
    while let Some(p) = pivot(&value) {
        let Some(row) = basis.get_mut(&p) else {
            if value[p].is_negative() {
                value.iter_mut().for_each(|c| *c = -&*c);
                combo.iter_mut().for_each(|c| *c = -&*c);
            }
            basis.insert(p, Row { value, combo });
            return;
        };
        let (a, b) = (row.value[p].clone(), value[p].clone());
        if b.is_multiple_of(&a) {
            let q = -(&b / &a);
            value = lin(&BigInt::one(), &value, &q, &row.value);
            combo = lin(&BigInt::one(), &combo, &q, &row.combo);
            continue;
        }
        // s a + t b = g; the pair (s, t; -b/g, a/g) is unimodular
        let e = a.extended_gcd(&b);
        let (g, s, t) = (e.gcd, e.x, e.y);
        let (ag, bg) = (&a / &g, &b / &g);
        let new_row_v = lin(&s, &row.value, &t, &value);
        let new_row_c = lin(&s, &row.combo, &t, &combo);
        value = lin(&ag, &value, &-bg.clone(), &row.value);
        combo = lin(&ag, &combo, &-bg, &row.combo);
        row.value = new_row_v;
        row.combo = new_row_c;
    }
}

/// Smallest positive integer `a_F` with `sum f_i g_i = a_F`, `deg g_i <= deg_cap`,
/// integer `g_i`. `None` if no nonzero constant is reachable at this cap.
pub fn cert_search(system: &PolySystem, deg_cap: u64) -> Result<Option<Certificate>, CertError> {
    cert_search_with_budget(system, deg_cap, DEFAULT_MATRIX_BUDGET)
}

pub fn cert_search_with_budget(
    system: &PolySystem,
    deg_cap: u64,
    budget: u64,
) -> Result<Option<Certificate>, CertError> {
    let n = system.nvars();
    let k = system.len();
    let d = system.max_degree();
    let cols = monomial_count(n, deg_cap).saturating_mul(k as u128);
    let rows = monomial_count(n, deg_cap.saturating_add(d));
    let needed = rows.saturating_mul(cols);
    if needed > u128::from(budget) {
        return Err(CertError::MatrixBudget { needed, budget });
    }
    let mut row_mons = monomials_up_to(n, deg_cap + d);
    row_mons.sort_by(|a, b| grlex(b, a));
    let row_index: HashMap<&[u64], usize> = row_mons
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mults = monomials_up_to(n, deg_cap);
    let ncols = k * mults.len();
    let nrows = row_mons.len();

    let mut basis: HashMap<usize, Row> = HashMap::new();
    for (i, f) in system.polys().iter().enumerate() {
        for (j, m) in mults.iter().enumerate() {
            let mut value = vec![BigInt::zero(); nrows];
            for t in f.terms() {
                let e: Vec<u64> = t.exps.iter().zip(m).map(|(a, b)| a + b).collect();
                value[row_index[e.as_slice()]] += &t.coeff;
            }
            let mut combo = vec![BigInt::zero(); ncols];
            combo[i * mults.len() + j] = BigInt::one();
            insert(&mut basis, value, combo);
        }
    }
    let Some(row) = basis.remove(&(nrows - 1)) else {
        return Ok(None);
    };
    let a_f = row.value[nrows - 1].clone();
    let g = (0..k)
        .map(|i| {
            Poly::from_terms(
                n,
                mults
                    .iter()
                    .enumerate()
                    .map(|(j, m)| (row.combo[i * mults.len() + j].clone(), m.clone())),
            )
        })
        .collect();
    Ok(Some(Certificate { g, a_f, deg_cap }))
}

/// Result of checking a certificate against `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertCheck {
    /// `sum f_i g_i - a_F` vanishes and `a_F > 0`.
    pub identity: bool,
    /// Every `deg g_i <= deg_cap`.
    pub degree_ok: bool,
    /// `sigma(a_F)` against the bound, when one is supplied.
    pub sigma_within_cap: Option<bool>,
}

impl CertCheck {
    pub fn valid(&self) -> bool {
        self.identity && self.degree_ok
    }
}

pub fn check_cert(
    system: &PolySystem,
    cert: &Certificate,
    bounds: Option<&CoolBounds>,
) -> CertCheck {
    if cert.g.len() != system.len() || cert.g.iter().any(|g| g.nvars() != system.nvars()) {
        return CertCheck {
            identity: false,
            degree_ok: false,
            sigma_within_cap: None,
        };
    }
    let n = system.nvars();
    let sum = system
        .polys()
        .iter()
        .zip(&cert.g)
        .fold(Poly::zero(n), |acc, (f, g)| acc.add(&f.mul(g)));
    let identity =
        cert.a_f.is_positive() && sum.sub(&Poly::constant(n, cert.a_f.clone())).is_zero();
    let degree_ok = cert.g.iter().all(|g| g.total_degree() <= cert.deg_cap);
    let sigma_within_cap = bounds.map(|b| BigInt::from(int_size(&cert.a_f)) <= b.sigma_af_cap);
    CertCheck {
        identity,
        degree_ok,
        sigma_within_cap,
    }
}

/// Exact identity and degree check.
pub fn verify_cert(system: &PolySystem, cert: &Certificate) -> bool {
    check_cert(system, cert, None).valid()
}
