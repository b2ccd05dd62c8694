//! Substituting a rational univariate parametrization into a system and
//! reducing modulo the defining polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::univariate::rem_q;
use super::{PolySystem, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResidueError {
    #[error("expected {expected} parametrizing polynomials and denominators, got {h} and {a}")]
    DimensionMismatch { expected: usize, h: usize, a: usize },
    #[error("denominators must be positive integers")]
    NonPositiveDenominator,
    #[error("the modulus must be a nonconstant polynomial")]
    ConstantModulus,
}

type QPoly = Vec<BigRational>;

fn q_of(f: &UniPoly) -> QPoly {
    f.coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn mul_mod(a: &QPoly, b: &QPoly, m: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rem_q(&out, m)
}

fn pow_mod(base: &QPoly, mut e: u64, m: &QPoly) -> QPoly {
    let mut acc = rem_q(&[BigRational::one()], m);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m);
        }
    }
    acc
}

fn add_into(acc: &mut QPoly, term: &QPoly) {
    if acc.len() < term.len() {
        acc.resize(term.len(), BigRational::zero());
    }
    for (a, t) in acc.iter_mut().zip(term) {
        *a += t;
    }
    while acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
}

/// Clears denominators with their positive lcm.
fn clear(p: &QPoly) -> UniPoly {
    let l = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    UniPoly::new(
        p.iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

/// For each `f_i`, the remainder of `(prod a_j)^(deg f_i) * f_i(h_1/a_1, ..., h_n/a_n)`
/// modulo `hhat`. The remainder is taken over `Q`, then scaled by the positive
/// lcm of its denominators; when `hhat` is monic no scaling occurs. All-zero
/// output means the parametrization satisfies every equation at each root of `hhat`.
pub fn compose_residue(
    system: &PolySystem,
    h: &[UniPoly],
    a: &[BigInt],
    hhat: &UniPoly,
) -> Result<Vec<UniPoly>, ResidueError> {
    let n = system.nvars();
    if h.len() != n || a.len() != n {
        return Err(ResidueError::DimensionMismatch {
            expected: n,
            h: h.len(),
            a: a.len(),
        });
    }
    if a.iter().any(|x| !x.is_positive()) {
        return Err(ResidueError::NonPositiveDenominator);
    }
    if hhat.is_constant() {
        return Err(ResidueError::ConstantModulus);
    }
    let m = q_of(hhat);
    let hq: Vec<QPoly> = h.iter().map(|x| rem_q(&q_of(x), &m)).collect();
    let out = system
        .polys()
        .iter()
        .map(|f| {
            let deg = f.total_degree();
            let mut acc: QPoly = Vec::new();
            for t in f.terms() {
                let mut scalar = t.coeff.clone();
                for (aj, &ej) in a.iter().zip(&t.exps) {
                    scalar *= num_traits::pow(aj.clone(), (deg - ej) as usize);
                }
                let mut term: QPoly = vec![BigRational::from_integer(scalar)];
                for (hj, &ej) in hq.iter().zip(&t.exps) {
                    if ej > 0 {
                        term = mul_mod(&term, &pow_mod(hj, ej, &m), &m);
                    }
                }
                add_into(&mut acc, &term);
            }
            clear(&acc)
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_system;

    fn t2m2() -> UniPoly {
        UniPoly::from_i64(&[-2, 0, 1])
    }

    #[test]
    fn identity_reduction_vanishes() {
        let f = parse_system("x1^2 - 2").unwrap();
        let r = compose_residue(&f, &[UniPoly::x()], &[BigInt::one()], &t2m2()).unwrap();
        assert!(r.iter().all(UniPoly::is_zero));
    }

    #[test]
    fn non_root_leaves_residue() {
        let f = parse_system("x1 - 1").unwrap();
        let r = compose_residue(&f, &[UniPoly::x()], &[BigInt::one()], &t2m2()).unwrap();
        assert_eq!(r, vec![UniPoly::from_i64(&[-1, 1])]);
    }

    #[test]
    fn cleared_denominator_vanishes() {
        let f = parse_system("x1^2 - 2").unwrap();
        let r = compose_residue(
            &f,
            &[UniPoly::from_i64(&[0, 2])],
            &[BigInt::from(2)],
            &t2m2(),
        )
        .unwrap();
        assert!(r.iter().all(UniPoly::is_zero));
    }

    #[test]
    fn dimension_and_input_errors() {
        let f = parse_system("x1*x2 - 2").unwrap();
        assert!(matches!(
            compose_residue(&f, &[UniPoly::x()], &[BigInt::one()], &t2m2()),
            Err(ResidueError::DimensionMismatch { .. })
        ));
        let g = parse_system("x1 - 2").unwrap();
        assert_eq!(
            compose_residue(&g, &[UniPoly::x()], &[BigInt::zero()], &t2m2()),
            Err(ResidueError::NonPositiveDenominator)
        );
        assert_eq!(
            compose_residue(
                &g,
                &[UniPoly::x()],
                &[BigInt::one()],
                &UniPoly::from_i64(&[3])
            ),
            Err(ResidueError::ConstantModulus)
        );
    }
}
