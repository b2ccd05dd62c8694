//! Ordinates of nontrivial zeta zeros and the truncated explicit formula for
//! `psi(x)`. Every tabulated zero is taken to have real part 1/2.

use std::path::Path;

use super::kahan;

#[derive(Debug, thiserror::Error)]
pub enum ZeroTableError {
    #[error("cannot read zero table: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: ordinate {value} does not exceed the previous one")]
    NotAscending { line: usize, value: f64 },
    #[error("T = {t} lies beyond the last tabulated ordinate {last}")]
    Coverage { t: f64, last: f64 },
    #[error("x = {0} is outside the supported range")]
    Domain(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    source: String,
}

const BUNDLED: &str = include_str!("../../data/zeta_zeros_100.txt");

impl ZeroTable {
    /// One positive ordinate per line, strictly ascending; `#` starts a comment.
    pub fn parse(text: &str, source: &str) -> Result<Self, ZeroTableError> {
        let mut gammas: Vec<f64> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let v: f64 = body.parse().map_err(|_| ZeroTableError::Format {
                line,
                message: format!("not a decimal number: {body:?}"),
            })?;
            if !(v.is_finite() && v > 0.0) {
                return Err(ZeroTableError::Format {
                    line,
                    message: format!("ordinate {v} is not positive"),
                });
            }
            if gammas.last().is_some_and(|&last| v <= last) {
                return Err(ZeroTableError::NotAscending { line, value: v });
            }
            gammas.push(v);
        }
        Ok(ZeroTable {
            gammas,
            source: source.to_string(),
        })
    }

    /// The first 100 ordinates, shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED, "bundled:zeta_zeros_100").expect("bundled table is well formed")
    }

    /// The first `k` entries.
    pub fn truncated(&self, k: usize) -> Self {
        ZeroTable {
            gammas: self.gammas[..k.min(self.gammas.len())].to_vec(),
            source: format!("{} (first {k})", self.source),
        }
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

pub fn load_zero_table(path: impl AsRef<Path>) -> Result<ZeroTable, ZeroTableError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    ZeroTable::parse(&text, &path.display().to_string())
}

/// `2 Re(x^rho / rho)` for `rho = 1/2 + i gamma`.
fn pair_term(x: f64, gamma: f64) -> f64 {
    let l = x.ln();
    let (s, c) = (gamma * l).sin_cos();
    2.0 * x.sqrt() * (0.5 * c + gamma * s) / (0.25 + gamma * gamma)
}

fn zero_sum<'a>(x: f64, gammas: impl Iterator<Item = &'a f64>) -> f64 {
    kahan(gammas.map(|&g| pair_term(x, g)))
}

/// `sum_{gamma < T} 2 Re(x^rho / rho)` over tabulated ordinates.
///
/// `x >= 1`. `T` may not exceed the last ordinate of a nonempty table.
pub fn s_trunc(x: f64, t: f64, table: &ZeroTable) -> Result<f64, ZeroTableError> {
    if !(x >= 1.0 && x.is_finite()) {
        return Err(ZeroTableError::Domain(x));
    }
    if let Some(&last) = table.gammas.last() {
        if t > last {
            return Err(ZeroTableError::Coverage { t, last });
        }
    }
    Ok(zero_sum(x, table.gammas.iter().take_while(|&&g| g < t)))
}

/// `x - S - log(2 pi) - (1/2) log(1 - x^-2)` with `S` summed over the whole table.
pub fn psi_explicit(x: f64, table: &ZeroTable) -> Result<f64, ZeroTableError> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(ZeroTableError::Domain(x));
    }
    let s = zero_sum(x, table.gammas.iter());
    Ok(x - s - (2.0 * std::f64::consts::PI).ln() - 0.5 * (1.0 - x.powi(-2)).ln())
}
