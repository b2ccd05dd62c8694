//! JSON report envelope shared by every command.
//!
//! Layout: `{command, input_digest, parameters, results, diagnostics}`. Big
//! integers are written as decimal strings and reals are rounded to 15
//! significant digits.

use std::fmt::Display;

use serde::{Serialize, Serializer};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Serializes any integer type through its decimal `Display` form.
pub fn big_as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn opt_big_as_string<T: Display, S: Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Rounds to 15 significant digits. Non-finite values become strings.
pub fn real(v: f64) -> Value {
    if !v.is_finite() {
        return Value::String(v.to_string());
    }
    let rounded: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn real_ser<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    real(*v).serialize(s)
}

/// Hex SHA-256 of the raw input bytes.
pub fn input_digest(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            command: command.to_string(),
            input_digest: input_digest(input),
            parameters: Map::new(),
            results: Value::Null,
            diagnostics: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_keep_fifteen_digits() {
        assert_eq!(real(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(real(5.416100402204).to_string(), "5.416100402204");
        assert_eq!(real(f64::INFINITY), Value::String("inf".into()));
    }

    #[test]
    fn envelope_shape() {
        let mut r = Report::new("census", b"x1 - 1");
        r.param("bound", 100);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        for k in [
            "command",
            "input_digest",
            "parameters",
            "results",
            "diagnostics",
        ] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    }
}
