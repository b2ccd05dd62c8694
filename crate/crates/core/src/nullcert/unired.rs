//! Univariate reductions `x_j = h_j(t) / a_j` over the roots of `hhat(t)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{d_eff, volume_for, CertError};
use crate::poly::{compose_residue, parse_poly, ParseError, PolySystem, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateReduction {
    pub hhat: UniPoly,
    pub h: Vec<UniPoly>,
    pub a: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionParseError {
    #[error("line {line}: expected `key: value`")]
    Layout { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: {source}")]
    Poly { line: usize, source: ParseError },
    #[error("line {line}: polynomial must be univariate in x1")]
    NotUnivariate { line: usize },
    #[error("line {line}: bad integer {text:?}")]
    Integer { line: usize, text: String },
    #[error("missing {0}")]
    Missing(String),
}

/// Index `j >= 1` from a key suffix, growing `v` to hold it.
fn slot<T: Clone>(
    v: &mut Vec<Option<T>>,
    idx: &str,
    key: &str,
    line: usize,
) -> Result<usize, ReductionParseError> {
    let j: usize =
        idx.parse()
            .ok()
            .filter(|&j| j >= 1)
            .ok_or_else(|| ReductionParseError::UnknownKey {
                line,
                key: key.to_string(),
            })?;
    if v.len() < j {
        v.resize(j, None);
    }
    Ok(j - 1)
}

fn collect<T>(v: Vec<Option<T>>, name: &str) -> Result<Vec<T>, ReductionParseError> {
    v.into_iter()
        .enumerate()
        .map(|(j, x)| x.ok_or_else(|| ReductionParseError::Missing(format!("{name}{}", j + 1))))
        .collect()
}

impl UnivariateReduction {
    /// Reads `hhat: <poly>`, `h<j>: <poly>` and `a<j>: <int>` lines (`j` from 1),
    /// with the parameter written as `x1`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ReductionParseError> {
        let mut hhat = None;
        let mut h: Vec<Option<UniPoly>> = Vec::new();
        let mut a: Vec<Option<BigInt>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, val) = body
                .split_once(':')
                .ok_or(ReductionParseError::Layout { line })?;
            let (key, val) = (key.trim(), val.trim());
            let uni = |v: &str| -> Result<UniPoly, ReductionParseError> {
                let p = parse_poly(v, 1)
                    .map_err(|source| ReductionParseError::Poly { line, source })?;
                p.to_univariate()
                    .ok_or(ReductionParseError::NotUnivariate { line })
            };
            if key == "hhat" {
                hhat = Some(uni(val)?);
            } else if let Some(idx) = key.strip_prefix('h') {
                let j = slot(&mut h, idx, key, line)?;
                h[j] = Some(uni(val)?);
            } else if let Some(idx) = key.strip_prefix('a') {
                let j = slot(&mut a, idx, key, line)?;
                a[j] = Some(val.parse().map_err(|_| ReductionParseError::Integer {
                    line,
                    text: val.to_string(),
                })?);
            } else {
                return Err(ReductionParseError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            }
        }
        let hhat = hhat.ok_or_else(|| ReductionParseError::Missing("hhat".into()))?;
        Ok(UnivariateReduction {
            hhat,
            h: collect(h, "h")?,
            a: collect(a, "a")?,
        })
    }
}

/// Size caps for a univariate reduction. The O-constants are unspecified, so
/// every `sigma` cap is scaled by the `o_const` knob.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniredBounds {
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub v_f: BigInt,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub hhat_degree_cap: BigInt,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub hhat_sigma_cap: f64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub h_sigma_cap: f64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub a_sigma_cap: f64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub o_const: f64,
    pub unspecified_o_constants: bool,
}

/// `deg hhat <= V_F`, `sigma(hhat) <= o V_F (sigma(F) + n ln D)`,
/// `sigma(h_i), sigma(a_i) <= o V_F^5 sigma(hhat) cap`.
pub fn unired_size_bounds(system: &PolySystem, o_const: f64) -> Result<UniredBounds, CertError> {
    let (v_f, _) = volume_for(system, false)?;
    let v = v_f.to_f64().unwrap_or(f64::INFINITY);
    let n = system.nvars() as f64;
    let hhat_sigma_cap =
        o_const * v * (system.sparse_size() as f64 + n * (d_eff(system) as f64).ln());
    let h_sigma_cap = o_const * v.powi(5) * hhat_sigma_cap;
    Ok(UniredBounds {
        hhat_degree_cap: v_f.clone(),
        v_f,
        hhat_sigma_cap,
        h_sigma_cap,
        a_sigma_cap: h_sigma_cap,
        o_const,
        unspecified_o_constants: true,
    })
}

/// True iff every `f_i(h/a)` vanishes on the roots of `hhat` and
/// `deg h_j <= deg hhat <= V_F`.
pub fn verify_unired(system: &PolySystem, red: &UnivariateReduction) -> bool {
    let Ok(residues) = compose_residue(system, &red.h, &red.a, &red.hhat) else {
        return false;
    };
    if !residues.iter().all(UniPoly::is_zero) {
        return false;
    }
    let Some(dh) = red.hhat.degree() else {
        return false;
    };
    if red.h.iter().any(|h| h.degree().unwrap_or(0) > dh) || red.a.iter().any(|a| !a.is_positive())
    {
        return false;
    }
    match volume_for(system, false) {
        Ok((v, _)) => BigInt::from(dh) <= v,
        Err(_) => false,
    }
}
