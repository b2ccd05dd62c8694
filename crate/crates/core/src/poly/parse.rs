//! Text input grammar: one polynomial per line, `#` comments, optional
//! `vars: n` header. Terms look like `-3*x1*x2^2`, coefficients default to 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, PolySystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable x{index} at line {line}, column {column} is outside 1..={max}")]
    VarOutOfRange {
        line: usize,
        column: usize,
        index: u64,
        max: u64,
    },
    #[error("input contains no polynomials")]
    Empty,
}

type RawTerm = (BigInt, BTreeMap<usize, u64>);

struct LineParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> LineParser<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        LineParser {
            bytes: text.as_bytes(),
            pos: 0,
            line,
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn small_int(&mut self, what: &str) -> Result<u64, ParseError> {
        self.skip_ws();
        let col = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.err(format!("expected {what}")))?;
        d.parse().map_err(|_| ParseError::Syntax {
            line: self.line,
            column: col + 1,
            message: format!("{what} does not fit in 64 bits"),
        })
    }

    fn factor(&mut self, exps: &mut BTreeMap<usize, u64>) -> Result<(), ParseError> {
        // caller has seen 'x'
        let col = self.pos;
        self.pos += 1;
        let index = self.small_int("variable index")?;
        if index == 0 {
            return Err(ParseError::VarOutOfRange {
                line: self.line,
                column: col + 1,
                index,
                max: 0,
            });
        }
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.small_int("exponent")?
        } else {
            1
        };
        let slot = exps.entry(index as usize - 1).or_insert(0);
        *slot = slot
            .checked_add(e)
            .ok_or_else(|| self.err("exponent overflow"))?;
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm, ParseError> {
        let mut coeff = BigInt::one();
        let mut exps = BTreeMap::new();
        let mut have_any = false;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                coeff = d.parse().unwrap();
                have_any = true;
            }
            Some(b'x') => {}
            Some(_) => return Err(self.err("expected a term")),
            None => return Err(self.err("unexpected end of input, expected a term")),
        }
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return Err(self.err("expected a variable after '*'"));
                    }
                }
                Some(b'x') => {}
                _ => break,
            }
            self.factor(&mut exps)?;
            have_any = true;
        }
        debug_assert!(have_any);
        if negative {
            coeff = -coeff;
        }
        Ok((coeff, exps))
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        terms.push(self.term(negative)?);
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected '+', '-' or end of line")),
            }
            self.pos += 1;
            terms.push(self.term(negative)?);
        }
        Ok(terms)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn vars_header(line: &str) -> Option<&str> {
    line.trim().strip_prefix("vars:")
}

/// Parses a polynomial system from text.
pub fn parse_system(text: &str) -> Result<PolySystem, ParseError> {
    let mut declared: Option<u64> = None;
    let mut raw: Vec<(usize, Vec<RawTerm>)> = Vec::new();
    for (i, full) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(full);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = vars_header(line) {
            let mut lp = LineParser::new(line, lineno);
            lp.pos = line.len() - rest.len();
            let n = lp.small_int("variable count")?;
            if lp.peek().is_some() {
                return Err(lp.err("trailing characters after variable count"));
            }
            declared = Some(n);
            continue;
        }
        let mut lp = LineParser::new(line, lineno);
        raw.push((lineno, lp.poly()?));
    }
    if raw.is_empty() {
        return Err(ParseError::Empty);
    }
    let seen = raw
        .iter()
        .flat_map(|(_, ts)| ts.iter())
        .flat_map(|(_, e)| e.keys().copied())
        .max()
        .map_or(0, |m| m as u64 + 1);
    let nvars = match declared {
        Some(n) => {
            if seen > n {
                let (line, _) = raw
                    .iter()
                    .find(|(_, ts)| ts.iter().any(|(_, e)| e.keys().any(|&k| k as u64 >= n)))
                    .unwrap();
                return Err(ParseError::VarOutOfRange {
                    line: *line,
                    column: 1,
                    index: seen,
                    max: n,
                });
            }
            n as usize
        }
        None => seen.max(1) as usize,
    };
    let polys = raw
        .into_iter()
        .map(|(_, ts)| {
            Poly::from_terms(
                nvars,
                ts.into_iter().map(|(c, e)| {
                    let mut v = vec![0; nvars];
                    for (k, x) in e {
                        v[k] = x;
                    }
                    (c, v)
                }),
            )
        })
        .collect();
    Ok(PolySystem::new(nvars, polys).expect("nvars consistent by construction"))
}

/// Parses a single polynomial line in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, ParseError> {
    let sys = parse_system(&format!("vars: {nvars}\n{text}"))?;
    if sys.len() != 1 {
        return Err(ParseError::Syntax {
            line: 1,
            column: 1,
            message: "expected one polynomial".into(),
        });
    }
    Ok(sys.polys()[0].clone())
}
