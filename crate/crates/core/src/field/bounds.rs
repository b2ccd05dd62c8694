//! Closed-form remainder bounds and hypothesis probes, evaluated in `f64`.
//!
//! `d` is always `|disc(f)|`, an upper surrogate for the field discriminant.

use serde::Serialize;

use super::{counts_with_budget, domain, EtaleField, FieldError, DEFAULT_COUNT_BUDGET};
use crate::poly::{PolySystem, UniPoly};

/// Constants of a prime-ideal remainder bound
/// `(X/T){a0 n L^2 + a1 n L + a2 n log T + a3 log d + a4 n} + (b0 log d + b1 n) L + c0 log d + c1 n`
/// where `L = log X`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailConstants {
    pub main: [f64; 5],
    pub tail_log: [f64; 2],
    pub tail_const: [f64; 2],
}

impl TailConstants {
    fn eval(&self, n: f64, log_d: f64, big_x: f64, t: f64) -> f64 {
        let l = big_x.ln();
        let m = &self.main;
        let lead = if t.is_infinite() {
            0.0
        } else {
            (big_x / t)
                * (m[0] * n * l * l + m[1] * n * l + m[2] * n * t.ln() + m[3] * log_d + m[4] * n)
        };
        lead + (self.tail_log[0] * log_d + self.tail_log[1] * n) * l
            + self.tail_const[0] * log_d
            + self.tail_const[1] * n
    }
}

/// Full-interval bound, `X = x`.
pub const UWEPIT: TailConstants = TailConstants {
    main: [5.0, 36.55, 375.2, 196.6, 351.0],
    tail_log: [2.0, 3.51],
    tail_const: [25.0, 283.1],
};

/// Short-interval bound, `X = x + y`; every constant is twice its [`UWEPIT`] counterpart.
pub const UWESIPIT: TailConstants = TailConstants {
    main: [10.0, 73.1, 750.4, 393.2, 702.0],
    tail_log: [4.0, 7.02],
    tail_const: [50.0, 566.2],
};

const LOG_X_MIN: f64 = 10.0;
const LOG_T_MIN: f64 = 5.0;
// accepts arguments computed as exp(10.0) or exp(5.0)
const SLACK: f64 = 1e-12;

fn need_x(name: &'static str, x: f64) -> Result<(), FieldError> {
    if x.is_finite() && x.ln() >= LOG_X_MIN - SLACK {
        Ok(())
    } else {
        Err(domain(name, x, "value >= e^10"))
    }
}

fn need_t(t: f64) -> Result<(), FieldError> {
    if t.ln() >= LOG_T_MIN - SLACK {
        Ok(())
    } else {
        Err(domain("T", t, "T >= e^5"))
    }
}

/// Explicit bound on `|psi_K(x) - (x - zero sum)|`; `T = inf` drops the `x/T` group.
pub fn uwepit_tail(field: &EtaleField, x: f64, t: f64) -> Result<f64, FieldError> {
    need_x("x", x)?;
    need_t(t)?;
    Ok(UWEPIT.eval(field.n_k() as f64, field.log_d(), x, t))
}

/// Explicit bound for the short-interval difference `psi_K(x+y) - psi_K(x)`.
pub fn uwesipit_tail(field: &EtaleField, x: f64, y: f64, t: f64) -> Result<f64, FieldError> {
    need_x("x", x)?;
    need_x("y", y)?;
    need_t(t)?;
    Ok(UWESIPIT.eval(field.n_k() as f64, field.log_d(), x + y, t))
}

/// `3.1 log^2 T + (77.1 n_K + 8 log d) log T`, bounding `sum 1/|rho|` over `|gamma| < T`.
pub fn rho_sum_bound(field: &EtaleField, t: f64) -> Result<f64, FieldError> {
    need_t(t)?;
    if t.is_infinite() {
        return Err(domain("T", t, "T finite"));
    }
    let l = t.ln();
    Ok(3.1 * l * l + (77.1 * field.n_k() as f64 + 8.0 * field.log_d()) * l)
}

/// `ln(max(n_K log d, e))` (always `>= 1`) and whether the clamp was active.
pub fn log_clamp(field: &EtaleField) -> (f64, bool) {
    let v = field.n_k() as f64 * field.log_d();
    if v < std::f64::consts::E {
        (1.0, true)
    } else {
        (v.ln(), false)
    }
}

/// `1.01 + (1 + ln(clamp(n_K log d)))^kappa`.
pub fn gipit_exponent(field: &EtaleField, kappa: f64) -> f64 {
    1.01 + (1.0 + log_clamp(field).0).powf(kappa)
}

/// Same exponent with the DZH parameter.
pub fn dzh_exponent(field: &EtaleField, kappabar: f64) -> f64 {
    gipit_exponent(field, kappabar)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GipitProbe {
    #[serde(serialize_with = "crate::report::real_ser")]
    pub x: f64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub exponent: f64,
    /// `pi_K((x+1)^E) - pi_K(x^E)`.
    pub lhs: u64,
    #[serde(serialize_with = "crate::report::real_ser")]
    pub rhs: f64,
    pub holds: bool,
    pub clamped: bool,
}

/// Counts prime ideals with norm in `(x^E, (x+1)^E]` and compares with
/// `1 + (n_K/2)(x+1)^(E/2)`.
pub fn gipit_probe(field: &EtaleField, x: f64, kappa: f64) -> Result<GipitProbe, FieldError> {
    gipit_probe_with_budget(field, x, kappa, DEFAULT_COUNT_BUDGET)
}

pub fn gipit_probe_with_budget(
    field: &EtaleField,
    x: f64,
    kappa: f64,
    budget: u64,
) -> Result<GipitProbe, FieldError> {
    if !(x >= 2.0) {
        return Err(domain("x", x, "x >= 2"));
    }
    let (_, clamped) = log_clamp(field);
    let e = gipit_exponent(field, kappa);
    let hi = (x + 1.0).powf(e);
    let lo = x.powf(e);
    let pi_hi = counts_with_budget(field, hi, budget)?.pi_k;
    let pi_lo = counts_with_budget(field, lo, budget)?.pi_k;
    let lhs = pi_hi - pi_lo;
    let rhs = 1.0 + field.n_k() as f64 / 2.0 * (x + 1.0).powf(e / 2.0);
    Ok(GipitProbe {
        x,
        exponent: e,
        lhs,
        rhs,
        holds: lhs as f64 >= rhs,
        clamped,
    })
}

/// `x^(1 - 1/E) T^(1.99/E)` for a given exponent `E > 0`.
pub fn dzh_rhs_with_exponent(x: f64, t: f64, e: f64) -> f64 {
    x.powf(1.0 - 1.0 / e) * t.powf(1.99 / e)
}

/// Hypothesized bound on `|S_K(x, T)|`; needs `x, T >= (1 + ln(clamp))^kappabar`.
pub fn dzh_rhs(field: &EtaleField, x: f64, t: f64, kappabar: f64) -> Result<f64, FieldError> {
    let threshold = (1.0 + log_clamp(field).0).powf(kappabar);
    if !(x >= threshold) {
        return Err(domain("x", x, "x >= (1 + log(clamp(n_K log d)))^kappabar"));
    }
    if !(t >= threshold) {
        return Err(domain("T", t, "T >= (1 + log(clamp(n_K log d)))^kappabar"));
    }
    Ok(dzh_rhs_with_exponent(x, t, dzh_exponent(field, kappabar)))
}

/// Upper bound on `log |disc|` of the square-free part of `g`:
/// `(2m-1)(sigma(g) + (m+alpha) log 2) + ((2m-1)/2) log(m+1) + (m/2) log(m(2m+1)/6)`, `m = deg g`.
pub fn disc_log_bound(g: &UniPoly, alpha: f64) -> Result<f64, FieldError> {
    let m = match g.degree() {
        Some(d) if d >= 1 => d as f64,
        _ => return Err(FieldError::ConstantPolynomial),
    };
    let sigma = PolySystem::univariate(std::slice::from_ref(g))
        .expect("one polynomial")
        .sparse_size() as f64;
    let ln2 = std::f64::consts::LN_2;
    Ok((2.0 * m - 1.0) * (sigma + (m + alpha) * ln2)
        + (2.0 * m - 1.0) / 2.0 * (m + 1.0).ln()
        + m / 2.0 * (m * (2.0 * m + 1.0) / 6.0).ln())
}

#[cfg(test)]
mod tests {
    use super::super::make_field;
    use super::*;

    fn field(c: &[i64]) -> EtaleField {
        make_field(&UniPoly::from_i64(c)).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn uwepit_examples() {
        let q = field(&[0, 1]);
        let (x, t) = (10f64.exp(), 5f64.exp());
        let v = uwepit_tail(&q, x, t).unwrap();
        let want = (x / t) * (500.0 + 365.5 + 375.2 * 5.0 + 351.0) + 35.1 + 283.1;
        assert!(close(v, want), "{v} vs {want}");
        assert!(close(uwepit_tail(&q, x, f64::INFINITY).unwrap(), 318.2));
        let k = field(&[1, 0, 1]);
        assert!(uwepit_tail(&k, x, t).unwrap() > v);
        assert!(matches!(
            uwepit_tail(&q, 100.0, t),
            Err(FieldError::Domain { .. })
        ));
        assert!(matches!(
            uwepit_tail(&q, x, 100.0),
            Err(FieldError::Domain { .. })
        ));
    }

    #[test]
    fn uwesipit_doubles_constants() {
        for i in 0..5 {
            assert_eq!(UWESIPIT.main[i], 2.0 * UWEPIT.main[i]);
        }
        for i in 0..2 {
            assert_eq!(UWESIPIT.tail_log[i], 2.0 * UWEPIT.tail_log[i]);
            assert_eq!(UWESIPIT.tail_const[i], 2.0 * UWEPIT.tail_const[i]);
        }
        let k = field(&[-5, 0, 1]);
        let (x, t) = (10f64.exp(), 5f64.exp());
        let short = uwesipit_tail(&k, x, x, t).unwrap();
        assert!(close(short, 2.0 * UWEPIT.eval(2.0, k.log_d(), 2.0 * x, t)));
        let resid = uwesipit_tail(&k, x, x, f64::INFINITY).unwrap();
        let l = (2.0 * x).ln();
        let ld = 20f64.ln();
        assert!(close(resid, (4.0 * ld + 14.04) * l + 50.0 * ld + 1132.4));
    }

    #[test]
    fn rho_sum_examples() {
        let t = 5f64.exp();
        assert!(close(rho_sum_bound(&field(&[0, 1]), t).unwrap(), 463.0));
        let want = 77.5 + (154.2 + 8.0 * 4f64.ln()) * 5.0;
        assert!(close(rho_sum_bound(&field(&[1, 0, 1]), t).unwrap(), want));
        assert!(rho_sum_bound(&field(&[0, 1]), 2.0 * t).unwrap() > 463.0);
    }

    #[test]
    fn exponents_and_dzh() {
        let q = field(&[0, 1]);
        assert_eq!(log_clamp(&q), (1.0, true));
        assert!(close(gipit_exponent(&q, 1.0), 3.01));
        let v = dzh_rhs(&q, 100.0, 100.0, 1.0).unwrap();
        assert!(close(
            v,
            100f64.powf(1.0 - 1.0 / 3.01) * 100f64.powf(1.99 / 3.01)
        ));
        assert!(close(
            dzh_rhs_with_exponent(16.0, 4.0, 2.0),
            4.0 * 4f64.powf(0.995)
        ));
        assert!(dzh_rhs(&q, 1.5, 100.0, 1.0).is_err());
    }

    #[test]
    fn gipit_probe_x2_plus_1() {
        let k = field(&[1, 0, 1]);
        let g = gipit_probe(&k, 10.0, 0.0).unwrap();
        assert!(close(g.exponent, 2.01));
        assert!(close(g.rhs, 1.0 + 11f64.powf(1.005)));
        let lo = super::super::counts(&k, 10f64.powf(2.01)).unwrap().pi_k;
        let hi = super::super::counts(&k, 11f64.powf(2.01)).unwrap().pi_k;
        assert_eq!(g.lhs, hi - lo);
        assert!(matches!(
            gipit_probe_with_budget(&k, 1000.0, 0.0, 10_000),
            Err(FieldError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn disc_log_bound_examples() {
        let g = UniPoly::from_i64(&[1, 0, 1]);
        let ln2 = std::f64::consts::LN_2;
        let want = 3.0 * (8.0 + 3.0 * ln2) + 1.5 * 3f64.ln() + (10.0f64 / 6.0).ln();
        let v = disc_log_bound(&g, 1.0).unwrap();
        assert!(close(v, want));
        assert!(4f64.ln() <= v);
        let bigger = disc_log_bound(&UniPoly::from_i64(&[100, 0, 1]), 1.0).unwrap();
        assert!(bigger > v);
    }
}
