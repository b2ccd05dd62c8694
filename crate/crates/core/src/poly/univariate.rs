//! Dense univariate integer polynomials: gcd, square-free part, resultant,
//! discriminant.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniPolyError {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation needs a nonconstant polynomial")]
    Constant,
    #[error("operation needs a nonzero polynomial")]
    ZeroInput,
}

/// Dense integer polynomial, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        UniPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Pseudo-remainder `prem(self, d)` with multiplier `lc(d)^(deg self - deg d + 1)`.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "pseudo-remainder by zero");
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &top * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Exact division over the integers; `None` if `d` does not divide `self`
    /// with an integral quotient.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            let (qk, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        r.iter().all(Zero::is_zero).then(|| UniPoly::new(q))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::Poly::from_univariate(self, 1, 0))
    }
}

/// Primitive gcd over `Z[x]` (content 1, positive leading coefficient),
/// via the primitive polynomial remainder sequence.
pub fn uni_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly, UniPolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(UniPolyError::BothZero);
    }
    let mut a = f.primitive();
    let mut b = g.primitive();
    if a.coeffs.len() < b.coeffs.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive();
        a = b;
        b = r;
    }
    if a.is_constant() {
        return Ok(UniPoly::constant(BigInt::one()));
    }
    Ok(a.primitive())
}

/// `f / gcd(f, f')`, made primitive with positive leading coefficient.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly, UniPolyError> {
    if f.is_constant() {
        return Err(UniPolyError::Constant);
    }
    let g = uni_gcd(f, &f.derivative())?;
    let q = f
        .primitive()
        .div_exact(&g)
        .expect("gcd divides f over Z by Gauss's lemma");
    Ok(q.primitive())
}

fn to_q(f: &UniPoly) -> Vec<BigRational> {
    f.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Remainder over `Q`.
pub(crate) fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let inv = b[db].recip();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let q = r.last().unwrap() * &inv;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        trim_q(&mut r);
    }
    r
}

/// Resultant of two nonzero integer polynomials, via the Euclidean
/// remainder sequence over `Q`.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigInt, UniPolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(UniPolyError::ZeroInput);
    }
    let mut a = to_q(f);
    let mut b = to_q(g);
    let mut acc = BigRational::one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            acc *= num_traits::pow(b[0].clone(), m);
            break;
        }
        if m == 0 {
            acc *= num_traits::pow(a[0].clone(), n);
            break;
        }
        let r = rem_q(&a, &b);
        if r.is_empty() {
            return Ok(BigInt::zero());
        }
        let dr = r.len() - 1;
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[n].clone(), m - dr);
        a = b;
        b = r;
    }
    assert!(
        acc.is_integer(),
        "resultant of integer polynomials is an integer"
    );
    Ok(acc.to_integer())
}

/// `(-1)^(d(d-1)/2) * res(f, f') / lc(f)`.
pub fn discriminant(f: &UniPoly) -> Result<BigInt, UniPolyError> {
    let d = f.degree().ok_or(UniPolyError::ZeroInput)?;
    if d == 0 {
        return Err(UniPolyError::Constant);
    }
    let res = resultant(f, &f.derivative())?;
    let (q, r) = res.div_rem(&f.lc());
    assert!(
        r.is_zero(),
        "discriminant of an integer polynomial is integral"
    );
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(uni_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(
            uni_gcd(&p(&[1, 0, 1]), &p(&[-2, 0, 0, 1])).unwrap(),
            p(&[1])
        );
        assert_eq!(uni_gcd(&UniPoly::zero(), &p(&[0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(uni_gcd(&p(&[0, -6]), &UniPoly::zero()).unwrap(), p(&[0, 1]));
        assert_eq!(
            uni_gcd(&UniPoly::zero(), &UniPoly::zero()),
            Err(UniPolyError::BothZero)
        );
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        assert_eq!(squarefree_part(&p(&[2, -3, 0, 1])).unwrap(), p(&[-2, 1, 1]));
        assert_eq!(squarefree_part(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
        assert_eq!(squarefree_part(&p(&[0, 0, 0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(squarefree_part(&p(&[5])), Err(UniPolyError::Constant));
    }

    #[test]
    fn resultant_and_discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[-5, 0, 1])).unwrap(), BigInt::from(20));
        assert_eq!(
            resultant(&p(&[-3, 1]), &p(&[-2, 0, 1])).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(discriminant(&p(&[0, 1])).unwrap(), BigInt::one());
        assert_eq!(
            discriminant(&p(&[-2, 0, 0, 1])).unwrap(),
            BigInt::from(-108)
        );
        assert_eq!(
            resultant(&UniPoly::zero(), &p(&[1])),
            Err(UniPolyError::ZeroInput)
        );
    }

    #[test]
    fn exact_division() {
        let f = p(&[-1, 0, 1]);
        assert_eq!(f.div_exact(&p(&[1, 1])).unwrap(), p(&[-1, 1]));
        assert!(f.div_exact(&p(&[1, 2])).is_none());
    }
}
