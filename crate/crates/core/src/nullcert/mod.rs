//! Effective Nullstellensatz quantities: degree and height caps for
//! certificates, certificate search and verification, univariate-reduction
//! checks, and the stride constants that drive the decision procedure.
//!
//! Every `log` here is the natural logarithm. `D` is taken as `max(D, 1)` so
//! that systems of constants still get positive caps.

mod cert;
mod unired;

pub use cert::{
    cert_search, cert_search_with_budget, check_cert, verify_cert, CertCheck, CertError,
    Certificate, DEFAULT_MATRIX_BUDGET,
};
pub use unired::{
    unired_size_bounds, verify_unired, ReductionParseError, UniredBounds, UnivariateReduction,
};

use num_bigint::{BigInt, BigUint};
use num_traits::{FromPrimitive, One, ToPrimitive};
use serde::Serialize;

use crate::field::{gipit_exponent, EtaleField};
use crate::newton::{normalized_volume, support_cloud, volume_upper_estimate, NewtonError};
use crate::poly::PolySystem;

pub(crate) fn d_eff(system: &PolySystem) -> u64 {
    system.max_degree().max(1)
}

/// `V_F`, exact when the dimension allows, else `max(D,1)^n` if `estimate` is set.
pub(crate) fn volume_for(system: &PolySystem, estimate: bool) -> Result<(BigInt, bool), CertError> {
    let cloud = support_cloud(system).expect("systems have at least one variable");
    match normalized_volume(&cloud) {
        Ok(v) => Ok((v, false)),
        Err(NewtonError::DimensionCap { dim, cap }) => {
            if estimate {
                Ok((volume_upper_estimate(system), true))
            } else {
                Err(CertError::DimensionCap { dim, cap })
            }
        }
        Err(e) => unreachable!("support clouds are well formed: {e}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoolBounds {
    pub n: usize,
    pub k: usize,
    /// `max(D, 1)`.
    pub d: u64,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub v_f: BigInt,
    pub v_f_estimated: bool,
    pub sigma_f: u64,
    /// `2 n^2 D V_F`.
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub deg_cap: BigInt,
    /// `ceil(2 (n+1)^3 D V_F (sigma(F) + ln k + 14 (n+1) D ln(D+1)))`.
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub sigma_af_cap: BigInt,
}

/// `ceil(p * s)` for a nonnegative integer `p` and real `s >= 0`.
fn ceil_mul(p: &BigInt, s: f64) -> BigInt {
    let whole = s.floor();
    let frac = s - whole;
    let head = p * BigInt::from_f64(whole).expect("finite");
    let tail = p.to_f64().unwrap_or(f64::INFINITY) * frac;
    match BigInt::from_f64(tail.ceil()) {
        Some(t) => head + t,
        None => head + p,
    }
}

pub fn cool_bounds(system: &PolySystem, estimate: bool) -> Result<CoolBounds, CertError> {
    let n = system.nvars();
    let k = system.len();
    let d = d_eff(system);
    let (v_f, v_f_estimated) = volume_for(system, estimate)?;
    let sigma_f = system.sparse_size();
    let deg_cap = BigInt::from(2 * n * n) * d * &v_f;
    let p = BigInt::from(2 * (n + 1).pow(3)) * d * &v_f;
    let s =
        sigma_f as f64 + (k as f64).ln() + 14.0 * (n + 1) as f64 * d as f64 * ((d + 1) as f64).ln();
    let sigma_af_cap = ceil_mul(&p, s);
    Ok(CoolBounds {
        n,
        k,
        d,
        v_f,
        v_f_estimated,
        sigma_f,
        deg_cap,
        sigma_af_cap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Unconditional,
    Gipit,
    Grh,
    Manual,
}

impl std::str::FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "uncond" | "unconditional" => Ok(Regime::Unconditional),
            "gipit" => Ok(Regime::Gipit),
            "grh" => Ok(Regime::Grh),
            "manual" => Ok(Regime::Manual),
            other => Err(format!("unknown regime {other:?}")),
        }
    }
}

/// Inputs to [`stride_constants`] beyond the system and field.
#[derive(Clone, Debug, PartialEq)]
pub struct StrideConfig {
    pub regime: Regime,
    pub kappa: f64,
    pub o_const: f64,
    /// `t_F` for the GRH and unconditional regimes.
    pub t_const: u64,
    /// `(t_F, a_count, C_F)` for the manual regime.
    pub manual: Option<(u64, u64, u64)>,
    /// A known Nullstellensatz constant, used in place of the height cap.
    pub af_hint: Option<BigInt>,
}

impl Default for StrideConfig {
    fn default() -> Self {
        StrideConfig {
            regime: Regime::Unconditional,
            kappa: 1.0,
            o_const: 1.0,
            t_const: 2,
            manual: None,
            af_hint: None,
        }
    }
}

impl StrideConfig {
    pub fn manual(t_f: u64, a_count: u64, c_f: u64) -> Self {
        StrideConfig {
            regime: Regime::Manual,
            manual: Some((t_f, a_count, c_f)),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrideConstants {
    pub regime: Regime,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub t_f: u64,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub a_count: u64,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub c_f: u64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub kappa: f64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub o_const: f64,
    /// `C_F` hit `u64::MAX`.
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StrideError {
    #[error("manual regime needs t_F, a_count and C_F")]
    MissingManual,
    #[error("gipit regime needs a field")]
    MissingField,
    #[error("t_F = 2^{bits} does not fit in 64 bits")]
    TooLarge { bits: u64 },
    #[error("constants must be positive")]
    NonPositive,
    #[error(transparent)]
    Bounds(#[from] CertError),
}

/// Least power of two strictly above `|v|`.
pub fn power_of_two_above(v: &BigInt) -> BigUint {
    BigUint::one() << v.magnitude().bits()
}

fn ceil_u64(v: f64) -> (u64, bool) {
    if v.is_finite() && v < u64::MAX as f64 {
        ((v.ceil() as u64).max(1), false)
    } else {
        (u64::MAX, true)
    }
}

/// `1 + floor(ln a)` for a positive integer `a`.
pub fn divisor_count_bound(a: &BigInt) -> u64 {
    1 + crate::field::ln_big(a).floor().max(0.0) as u64
}

/// `(t_F, a_count, C_F)` for the selected regime.
///
/// `a_count = 1 + floor(ln a)` with `a` the hint or `2^sigma_af_cap`;
/// `C_F` is `ceil(2^(o sigma(F)))`, `ceil(1.01 + (1 + ln clamp(n_K log d))^kappa)` or
/// `ceil(o sigma(F)^2.01)`; `t_F` is the configured constant except under GIPIT,
/// where it is the least power of two above `|disc|`.
pub fn stride_constants(
    system: &PolySystem,
    field: Option<&EtaleField>,
    cfg: &StrideConfig,
) -> Result<StrideConstants, StrideError> {
    let mk = |t_f, a_count, c_f, saturated| StrideConstants {
        regime: cfg.regime,
        t_f,
        a_count,
        c_f,
        kappa: cfg.kappa,
        o_const: cfg.o_const,
        saturated,
    };
    if cfg.regime == Regime::Manual {
        let (t, a, c) = cfg.manual.ok_or(StrideError::MissingManual)?;
        if t == 0 || a == 0 || c == 0 {
            return Err(StrideError::NonPositive);
        }
        return Ok(mk(t, a, c, false));
    }
    let a_count = match &cfg.af_hint {
        Some(h) if *h >= BigInt::one() => divisor_count_bound(h),
        Some(_) => return Err(StrideError::NonPositive),
        None => {
            let cap = cool_bounds(system, true)?.sigma_af_cap;
            let ln = cap.to_f64().unwrap_or(f64::INFINITY) * std::f64::consts::LN_2;
            let fl = ln.floor();
            if fl.is_finite() && fl < (u64::MAX - 1) as f64 {
                1 + fl as u64
            } else {
                u64::MAX
            }
        }
    };
    let sigma = system.sparse_size() as f64;
    let (t_f, (c_f, saturated)) = match cfg.regime {
        Regime::Unconditional => (cfg.t_const, ceil_u64((cfg.o_const * sigma).exp2())),
        Regime::Grh => (cfg.t_const, ceil_u64(cfg.o_const * sigma.powf(2.01))),
        Regime::Gipit => {
            let k = field.ok_or(StrideError::MissingField)?;
            let t = power_of_two_above(k.disc());
            let t = t
                .to_u64()
                .ok_or(StrideError::TooLarge { bits: t.bits() - 1 })?;
            (t, ceil_u64(gipit_exponent(k, cfg.kappa)))
        }
        Regime::Manual => unreachable!(),
    };
    if t_f == 0 {
        return Err(StrideError::NonPositive);
    }
    Ok(mk(t_f, a_count, c_f, saturated))
}

/// A field for a system whose members share one variable: the gcd of the
/// members when it is nonconstant, otherwise the member of largest degree.
pub fn associated_field(system: &PolySystem) -> Option<EtaleField> {
    let unis: Vec<_> = system
        .polys()
        .iter()
        .map(|f| f.to_univariate())
        .collect::<Option<_>>()?;
    let mut vars: Vec<usize> = system
        .polys()
        .iter()
        .flat_map(|f| f.support_vars())
        .collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() != 1 {
        return None;
    }
    let g = unis
        .iter()
        .try_fold(crate::poly::UniPoly::zero(), |acc, f| {
            crate::poly::uni_gcd(&acc, f).ok()
        })?;
    if !g.is_constant() {
        return crate::field::make_field(&g).ok();
    }
    let top = unis
        .iter()
        .filter(|f| !f.is_constant())
        .max_by_key(|f| f.degree())?;
    crate::field::make_field(top).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::{parse_system, UniPoly};

    #[test]
    fn cool_bounds_examples() {
        let b = cool_bounds(&parse_system("x1\nx1 - 1").unwrap(), false).unwrap();
        assert_eq!(
            (b.n, b.d, b.v_f.clone(), b.deg_cap.clone()),
            (1, 1, BigInt::from(1), BigInt::from(2))
        );
        let e = cool_bounds(&parse_system("x1^6 - 1\nx1 - 6").unwrap(), false).unwrap();
        assert_eq!(
            (e.d, e.v_f.clone(), e.deg_cap.clone()),
            (6, BigInt::from(6), BigInt::from(72))
        );
        // sigma cap: 2 * 8 * 6 * 6 * (sigma + ln 2 + 28 * 6 * ln 7)
        let s = e.sigma_f as f64 + 2f64.ln() + 168.0 * 7f64.ln();
        assert_eq!(e.sigma_af_cap, BigInt::from((576.0 * s).ceil() as u64));
        let lin = cool_bounds(&parse_system("x1^3 - 1\nx1 - 6").unwrap(), false).unwrap();
        assert_eq!(lin.deg_cap, BigInt::from(2 * 3 * 3));
    }

    #[test]
    fn dimension_cap_needs_estimate() {
        let f = parse_system("x1 + x2 + x3 + x4 + x5 + x6 + x7^2").unwrap();
        assert!(matches!(
            cool_bounds(&f, false),
            Err(CertError::DimensionCap { dim: 7, cap: 6 })
        ));
        let b = cool_bounds(&f, true).unwrap();
        assert!(b.v_f_estimated);
        assert_eq!(b.v_f, BigInt::from(128));
    }

    #[test]
    fn stride_examples() {
        let elkies = parse_system("x1^6 - 1\nx1 - 6").unwrap();
        let cfg = StrideConfig {
            af_hint: Some(BigInt::from(46655)),
            ..StrideConfig::default()
        };
        assert_eq!(stride_constants(&elkies, None, &cfg).unwrap().a_count, 11);
        let one = StrideConfig {
            af_hint: Some(BigInt::one()),
            ..StrideConfig::default()
        };
        assert_eq!(stride_constants(&elkies, None, &one).unwrap().a_count, 1);
        let m = stride_constants(&elkies, None, &StrideConfig::manual(2, 4, 2)).unwrap();
        assert_eq!((m.t_f, m.a_count, m.c_f), (2, 4, 2));
        let k = make_field(&UniPoly::from_i64(&[1, 0, 1])).unwrap();
        let g = StrideConfig {
            regime: Regime::Gipit,
            kappa: 0.0,
            ..StrideConfig::default()
        };
        let s = stride_constants(&elkies, Some(&k), &g).unwrap();
        assert_eq!(s.t_f, 8);
        assert_eq!(s.c_f, 3);
        assert!(matches!(
            stride_constants(&elkies, None, &g),
            Err(StrideError::MissingField)
        ));
    }

    #[test]
    fn regimes_scale_with_sigma() {
        let f = parse_system("x1 - 1").unwrap();
        let sigma = f.sparse_size() as f64;
        let u = stride_constants(&f, None, &StrideConfig::default()).unwrap();
        assert_eq!(u.c_f, sigma.exp2().ceil() as u64);
        assert_eq!(u.t_f, 2);
        let grh = StrideConfig {
            regime: Regime::Grh,
            ..StrideConfig::default()
        };
        assert_eq!(
            stride_constants(&f, None, &grh).unwrap().c_f,
            sigma.powf(2.01).ceil() as u64
        );
        let big = parse_system("123456789012345678901234567890*x1 - 1").unwrap();
        let sat = stride_constants(&big, None, &StrideConfig::default()).unwrap();
        assert!(sat.saturated);
        assert_eq!(sat.c_f, u64::MAX);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(power_of_two_above(&BigInt::from(4)), BigUint::from(8u32));
        assert_eq!(power_of_two_above(&BigInt::from(-5)), BigUint::from(8u32));
        assert_eq!(power_of_two_above(&BigInt::from(1)), BigUint::from(2u32));
        assert_eq!(power_of_two_above(&BigInt::from(7)), BigUint::from(8u32));
    }

    #[test]
    fn associated_fields() {
        let k = associated_field(&parse_system("x1^6 - 1\nx1 - 6").unwrap()).unwrap();
        assert_eq!(k.n_k(), 6);
        let k = associated_field(&parse_system("x1^2 - 1\nx1^3 - 1").unwrap()).unwrap();
        assert_eq!(k.f(), &UniPoly::from_i64(&[-1, 1]));
        assert!(associated_field(&parse_system("x1*x2 - 1").unwrap()).is_none());
    }
}
