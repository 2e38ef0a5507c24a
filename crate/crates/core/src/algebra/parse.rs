//! Text and JSON serialization of forms.
//!
//! Text syntax: terms joined by `+`/`-`, each a product of numbers and
//! variables `x1, x2, …` with optional `^e`; `*` is optional.
//!
//! JSON syntax:
//! `{"vars": n, "degree": d, "terms": [{"coeff": "3/4", "exp": [e1, …, en]}]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::field::Field;
use super::form::Form;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub vars: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Value,
    pub exp: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Number(String),
    Var(usize),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push(Token::Plus);
                i += 1;
            }
            b'-' => {
                out.push(Token::Minus);
                i += 1;
            }
            b'*' => {
                out.push(Token::Star);
                i += 1;
            }
            b'^' => {
                out.push(Token::Caret);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < b.len() && (b[i] == b'/' || b[i] == b'.') && b[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Token::Number(s[start..i].to_string()));
            }
            b'x' => {
                i += 1;
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = s[start..i]
                    .parse()
                    .map_err(|_| Error::parse(format!("bad variable at byte {start}")))?;
                if idx == 0 {
                    return Err(Error::parse("variables are numbered from x1"));
                }
                out.push(Token::Var(idx - 1));
            }
            _ => {
                return Err(Error::parse(format!(
                    "unexpected character `{}` at byte {i}",
                    c as char
                )))
            }
        }
    }
    Ok(out)
}

struct RawTerm<E> {
    coeff: E,
    vars: Vec<(usize, u32)>,
}

fn parse_terms<F: Field>(s: &str, field: &F) -> Result<Vec<RawTerm<F::Elem>>> {
    let toks = tokenize(s)?;
    let mut terms = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut negative = false;
        let mut saw_sign = false;
        while i < toks.len() && matches!(toks[i], Token::Plus | Token::Minus) {
            if toks[i] == Token::Minus {
                negative = !negative;
            }
            saw_sign = true;
            i += 1;
        }
        if !first && !saw_sign {
            return Err(Error::parse("missing `+` or `-` between terms"));
        }
        first = false;
        let mut coeff = field.one();
        let mut vars = Vec::new();
        let mut factors = 0;
        while i < toks.len() && !matches!(toks[i], Token::Plus | Token::Minus) {
            match &toks[i] {
                Token::Star => {
                    if factors == 0 {
                        return Err(Error::parse("`*` without a left factor"));
                    }
                    i += 1;
                    continue;
                }
                Token::Number(n) => {
                    coeff = field.mul(&coeff, &field.parse_elem(n)?);
                    i += 1;
                }
                Token::Var(v) => {
                    let v = *v;
                    i += 1;
                    let mut e = 1u32;
                    if i < toks.len() && toks[i] == Token::Caret {
                        i += 1;
                        match toks.get(i) {
                            Some(Token::Number(n)) => {
                                e = n
                                    .parse()
                                    .map_err(|_| Error::parse(format!("bad exponent `{n}`")))?;
                                i += 1;
                            }
                            _ => return Err(Error::parse("`^` must be followed by an integer")),
                        }
                    }
                    vars.push((v, e));
                }
                Token::Caret => return Err(Error::parse("`^` without a variable")),
                Token::Plus | Token::Minus => unreachable!(),
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(Error::parse("empty term"));
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        terms.push(RawTerm { coeff, vars });
    }
    Ok(terms)
}

impl<F: Field> Form<F> {
    /// Parses a form from text; the variable count is the largest index used.
    pub fn parse(s: &str, field: F) -> Result<Self> {
        Self::parse_inner(s, field, None)
    }

    /// Parses a form from text in a ring with `n` variables.
    pub fn parse_with_vars(s: &str, field: F, n: usize) -> Result<Self> {
        Self::parse_inner(s, field, Some(n))
    }

    fn parse_inner(s: &str, field: F, n: Option<usize>) -> Result<Self> {
        let raw = parse_terms(s, &field)?;
        let used = raw
            .iter()
            .flat_map(|t| t.vars.iter().map(|(v, _)| v + 1))
            .max()
            .unwrap_or(0);
        let n = match n {
            Some(n) if n < used => {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: used,
                })
            }
            Some(n) => n,
            None => used.max(1),
        };
        let mut degree = None;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let mut e = vec![0u32; n];
            for (v, x) in t.vars {
                e[v] += x;
            }
            let d: u32 = e.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::Inhomogeneous {
                        expected: d0,
                        found: d,
                    })
                }
                _ => {}
            }
            terms.push((e, t.coeff));
        }
        Form::new(field, n, degree.unwrap_or(0), terms)
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            vars: self.num_vars(),
            degree: self.degree(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coeff: Value::String(self.field().format_elem(c)),
                    exp: m.exps().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &FormJson, field: F) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((t.exp.clone(), parse_coeff(&t.coeff, &field)?));
        }
        Form::new(field, j.vars, j.degree, terms)
    }

    pub fn from_json_str(s: &str, field: F) -> Result<Self> {
        let j: FormJson = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_json(&j, field)
    }
}

/// A coefficient given either as a JSON string or a JSON integer.
pub fn parse_coeff<F: Field>(v: &Value, field: &F) -> Result<F::Elem> {
    match v {
        Value::String(s) => field.parse_elem(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse_elem(&n.to_string()),
        other => Err(Error::parse(format!("bad coefficient {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};
    use crate::algebra::padic::PadicField;

    #[test]
    fn text_examples() {
        let f = Form::parse("x1^2 + 3 x2^2 - x3^2", Rationals).unwrap();
        assert_eq!((f.num_vars(), f.degree(), f.num_terms()), (3, 2, 3));
        let g = Form::parse("2*x1*x2^2 - 1/2 x3^3", Rationals).unwrap();
        assert_eq!(g.coeff(&[0, 0, 3]), Rationals.parse_elem("-1/2").unwrap());
        assert_eq!(g.coeff(&[1, 2, 0]), Rationals.from_i64(2));
    }

    #[test]
    fn text_errors() {
        assert!(Form::parse("x1 x2 x", Rationals).is_err());
        assert!(Form::parse("x0", Rationals).is_err());
        assert!(Form::parse("x1 x2 ^", Rationals).is_err());
        assert!(Form::parse("x1 x2 x3^2", Rationals).is_ok());
        assert!(Form::parse("x1 x2 x3 x1", Rationals).is_ok());
        assert!(Form::parse("x1 x1", Rationals).is_ok());
        assert!(Form::parse("x1 x2 +", Rationals).is_err());
        assert!(Form::parse_with_vars("x3", Rationals, 2).is_err());
    }

    #[test]
    fn json_round_trip_over_each_field() {
        let s = "x1^2 + 3 x2^2 - x3^2 + 2 x1 x3";
        let f = Form::parse(s, Rationals).unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(Form::from_json_str(&j, Rationals).unwrap(), f);

        let k = PrimeField::new(11).unwrap();
        let f = Form::parse(s, k).unwrap();
        assert_eq!(Form::from_json(&f.to_json(), k).unwrap(), f);

        let k = PadicField::new(5, 6).unwrap();
        let f = Form::parse("1/5 x1^2 + 10 x2^2 - x1 x2", k).unwrap();
        assert_eq!(Form::from_json(&f.to_json(), k).unwrap(), f);
    }

    #[test]
    fn json_accepts_integer_coefficients() {
        let j = r#"{"vars": 2, "degree": 2, "terms": [{"coeff": 3, "exp": [2, 0]}, {"coeff": "-1", "exp": [0, 2]}]}"#;
        let f = Form::from_json_str(j, Rationals).unwrap();
        assert_eq!(f, Form::parse("3 x1^2 - x2^2", Rationals).unwrap());
        let bad = r#"{"vars": 2, "degree": 2, "terms": [{"coeff": 3, "exp": [1, 0]}]}"#;
        assert!(matches!(
            Form::from_json_str(bad, Rationals),
            Err(Error::Inhomogeneous { .. })
        ));
    }
}
