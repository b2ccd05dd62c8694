//! Sparse multivariate integer polynomials and the univariate toolkit.
//!
//! Terms are kept in a canonical form: no zero coefficients, no repeated
//! exponent vectors, sorted strictly ascending in graded-lexicographic order.
//! Printing emits terms highest first, so `parse(print(p)) == p`.

mod parse;
mod residue;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use parse::{parse_poly, parse_system, ParseError};
pub use residue::{compose_residue, ResidueError};
pub use univariate::{discriminant, resultant, squarefree_part, uni_gcd, UniPoly, UniPolyError};

/// Bit size of an integer: `1 + ceil(log2(1 + |a|))`.
///
/// `ceil(log2(m))` for `m >= 1` is the bit length of `m - 1`, so this is just
/// one plus the bit length of `|a|`.
pub fn int_size(a: &BigInt) -> u64 {
    1 + a.magnitude().bits()
}

/// Bit size of a machine exponent.
pub fn exp_size(e: u64) -> u64 {
    1 + u64::from(u64::BITS - e.leading_zeros())
}

/// Graded-lexicographic comparison of exponent vectors.
pub fn grlex(a: &[u64], b: &[u64]) -> Ordering {
    let da: u128 = a.iter().map(|&e| u128::from(e)).sum();
    let db: u128 = b.iter().map(|&e| u128::from(e)).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub exps: Vec<u64>,
}

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.exps.iter().sum()
    }
}

/// Exponent vector wrapper ordered by graded lex, used as a map key.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GrlexKey(Vec<u64>);

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<Monomial>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(nvars, [(c.into(), vec![0; nvars])])
    }

    /// The variable `x_{index+1}` (zero-based `index`).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::from_terms(nvars, [(BigInt::one(), e)])
    }

    /// Builds a canonical polynomial, merging like terms and dropping zeros.
    ///
    /// Panics if an exponent vector does not have length `nvars`.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, Vec<u64>)>,
    {
        let mut acc: BTreeMap<GrlexKey, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            *acc.entry(GrlexKey(e)).or_insert_with(BigInt::zero) += c;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Monomial {
                coeff: c,
                exps: k.0,
            })
            .collect();
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exps.iter().all(|&e| e == 0))
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u64 {
        self.terms.last().map_or(0, Monomial::total_degree)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&j| self.terms.iter().any(|t| t.exps[j] > 0))
            .collect()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|t| (t.coeff.clone(), t.exps.clone())),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Monomial {
                    coeff: -&t.coeff,
                    exps: t.exps.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
                out.push((&a.coeff * &b.coeff, e));
            }
        }
        Self::from_terms(self.nvars, out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|t| (&t.coeff * c, t.exps.clone())),
        )
    }

    /// Interprets a polynomial in at most one variable as a dense univariate
    /// polynomial in that variable. Returns `None` if two or more variables occur.
    pub fn to_univariate(&self) -> Option<UniPoly> {
        let vars = self.support_vars();
        match vars.as_slice() {
            [] => Some(UniPoly::constant(self.constant_coeff())),
            [j] => {
                let deg = self.terms.iter().map(|t| t.exps[*j]).max().unwrap_or(0);
                let mut coeffs = vec![BigInt::zero(); deg as usize + 1];
                for t in &self.terms {
                    coeffs[t.exps[*j] as usize] += &t.coeff;
                }
                Some(UniPoly::new(coeffs))
            }
            _ => None,
        }
    }

    /// Embeds a univariate polynomial as a polynomial in `x_{var+1}`.
    pub fn from_univariate(f: &UniPoly, nvars: usize, var: usize) -> Poly {
        assert!(var < nvars);
        Self::from_terms(
            nvars,
            f.coeffs().iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; nvars];
                e[var] = i as u64;
                (c.clone(), e)
            }),
        )
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.terms
            .first()
            .filter(|t| t.exps.iter().all(|&e| e == 0))
            .map_or_else(BigInt::zero, |t| t.coeff.clone())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Monomial, first: bool) -> fmt::Result {
    let neg = t.coeff.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let mag = t.coeff.abs();
    let is_const = t.exps.iter().all(|&e| e == 0);
    let mut wrote = false;
    if is_const || !mag.is_one() {
        write!(f, "{mag}")?;
        wrote = true;
    }
    for (j, &e) in t.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if wrote {
            f.write_str("*")?;
        }
        write!(f, "x{}", j + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
        wrote = true;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().rev().enumerate() {
            write_term(f, t, i == 0)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("a polynomial system needs at least one polynomial")]
    Empty,
    #[error("polynomial {index} has {found} variables, expected {expected}")]
    VarMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// The input system `F = (f_1, ..., f_k)` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySystem {
    nvars: usize,
    polys: Vec<Poly>,
}

impl PolySystem {
    pub fn new(nvars: usize, polys: Vec<Poly>) -> Result<Self, SystemError> {
        if polys.is_empty() {
            return Err(SystemError::Empty);
        }
        for (i, p) in polys.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(SystemError::VarMismatch {
                    index: i,
                    expected: nvars,
                    found: p.nvars(),
                });
            }
        }
        Ok(PolySystem { nvars, polys })
    }

    /// A system of univariate polynomials in `x1`.
    pub fn univariate(polys: &[UniPoly]) -> Result<Self, SystemError> {
        Self::new(
            1,
            polys
                .iter()
                .map(|f| Poly::from_univariate(f, 1, 0))
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Number of polynomials `k`.
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `D = max_i deg f_i`.
    pub fn max_degree(&self) -> u64 {
        self.polys.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Sparse size `sigma(F)`: for every monomial of every member, the bit
    /// size of its coefficient plus the bit sizes of all its exponents.
    pub fn sparse_size(&self) -> u64 {
        self.polys
            .iter()
            .flat_map(|p| p.terms())
            .map(|t| int_size(&t.coeff) + t.exps.iter().map(|&e| exp_size(e)).sum::<u64>())
            .sum()
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.nvars)?;
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`PolySystem::sparse_size`].
pub fn sparse_size(system: &PolySystem) -> u64 {
    system.sparse_size()
}
