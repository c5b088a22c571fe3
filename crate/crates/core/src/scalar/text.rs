//! Text form `a/b*sqrt(n)+…` and JSON form `{"terms":[{"rad":n,"num":a,"den":b}]}`.

use std::fmt;
use std::str::FromStr;

use num::traits::{ToPrimitive, Zero};
use num::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::{Rational, ScalarError, Surd};

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (rad, q)) in self.terms().enumerate() {
            let negative = q.signum() < 0;
            if negative {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let mag = q.abs();
            if rad == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({rad})")?;
            } else {
                write!(f, "{mag}*sqrt({rad})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Surd {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s.as_bytes(), pos: 0 }.surd()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> ScalarError {
        ScalarError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn radicand(&mut self) -> Result<u64, ScalarError> {
        if !self.eat("(") {
            return Err(self.err("expected '('"));
        }
        let n = self.natural()?;
        if !self.eat(")") {
            return Err(self.err("expected ')'"));
        }
        n.to_u64().ok_or_else(|| ScalarError::RadicandOverflow(n.to_string()))
    }

    fn term(&mut self) -> Result<(u64, Rational), ScalarError> {
        if self.eat("sqrt") {
            return Ok((self.radicand()?, Rational::one()));
        }
        let num = self.natural()?;
        let den = if self.eat("/") { self.natural()? } else { BigInt::from(1) };
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let q = Rational::from_bigints(num, den);
        if self.eat("*") {
            if !self.eat("sqrt") {
                return Err(self.err("expected 'sqrt'"));
            }
            return Ok((self.radicand()?, q));
        }
        Ok((1, q))
    }

    fn surd(mut self) -> Result<Surd, ScalarError> {
        let mut terms = Vec::new();
        let mut negative = self.eat("-");
        loop {
            let (rad, q) = self.term()?;
            if rad == 0 {
                return Err(ScalarError::Parse("zero radicand".into()));
            }
            terms.push((rad, if negative { -q } else { q }));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
        Ok(Surd::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct SurdJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    rad: u64,
    num: Value,
    den: Value,
}

/// Integers that fit in `i64` are emitted as JSON numbers, larger ones as
/// decimal strings.
fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, ScalarError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(ScalarError::Parse(format!("non-integer number {n}")))
            }
        }
        Value::String(s) => {
            let body = s.strip_prefix('-').unwrap_or(s);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ScalarError::Parse(format!("bad integer string {s:?}")));
            }
            Ok(s.parse().expect("validated digits"))
        }
        other => Err(ScalarError::Parse(format!("expected integer, found {other}"))),
    }
}

impl Surd {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("surd serialises")
    }

    pub fn from_json_value(v: &Value) -> Result<Surd, ScalarError> {
        let raw: SurdJson = serde_json::from_value(v.clone()).map_err(|e| ScalarError::Parse(e.to_string()))?;
        Self::from_json_terms(raw)
    }

    pub fn from_json_str(s: &str) -> Result<Surd, ScalarError> {
        let raw: SurdJson = serde_json::from_str(s).map_err(|e| ScalarError::Parse(e.to_string()))?;
        Self::from_json_terms(raw)
    }

    fn from_json_terms(raw: SurdJson) -> Result<Surd, ScalarError> {
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if t.rad == 0 {
                return Err(ScalarError::Parse("zero radicand".into()));
            }
            let num = int_from_json(&t.num)?;
            let den = int_from_json(&t.den)?;
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            terms.push((t.rad, Rational::from_bigints(num, den)));
        }
        Ok(Surd::from_terms(terms))
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = SurdJson {
            terms: self
                .terms()
                .map(|(rad, q)| TermJson { rad, num: int_to_json(&q.numer()), den: int_to_json(&q.denom()) })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SurdJson::deserialize(deserializer)?;
        Surd::from_json_terms(raw).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_canonical_text() {
        assert_eq!(Surd::monomial(Rational::new(2, 5), 5).to_string(), "2/5*sqrt(5)");
        assert_eq!(Surd::zero().to_string(), "0");
        assert_eq!(Surd::one().to_string(), "1");
        assert_eq!((Surd::one() - Surd::sqrt_u64(5)).to_string(), "1-sqrt(5)");
        assert_eq!(Surd::monomial(Rational::new(-1, 3), 3).to_string(), "-1/3*sqrt(3)");
    }

    #[test]
    fn parses_and_canonicalises() {
        let x: Surd = "2*sqrt(8) - 1/2 + sqrt(2)".parse().unwrap();
        assert_eq!(x.to_string(), "-1/2+5*sqrt(2)");
        assert!("sqrt(2".parse::<Surd>().is_err());
        assert!("1/0".parse::<Surd>().is_err());
        assert!("sqrt(0)".parse::<Surd>().is_err());
        assert!("".parse::<Surd>().is_err());
        assert!("1 2".parse::<Surd>().is_err());
    }

    #[test]
    fn json_shape() {
        let x = Surd::monomial(Rational::new(2, 5), 5);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"terms":[{"rad":5,"num":2,"den":5}]}"#);
        assert_eq!(serde_json::to_string(&Surd::zero()).unwrap(), r#"{"terms":[]}"#);
        let big = Surd::from_rational(Rational::from_bigints(BigInt::from(10).pow(30), BigInt::from(7)));
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.contains(r#""num":"1000000000000000000000000000000""#), "{s}");
        assert_eq!(Surd::from_json_str(&s).unwrap(), big);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(Surd::from_json_str(r#"{"terms":[{"rad":0,"num":1,"den":1}]}"#).is_err());
        assert!(Surd::from_json_str(r#"{"terms":[{"rad":2,"num":1,"den":0}]}"#).is_err());
        assert!(Surd::from_json_str(r#"{"terms":[{"rad":2,"num":"1x","den":1}]}"#).is_err());
        assert!(Surd::from_json_str(r#"{"terms":[{"rad":2,"num":1.5,"den":1}]}"#).is_err());
    }

    fn any_surd() -> impl Strategy<Value = Surd> {
        prop::collection::vec((1u64..200, -50i64..50, 1i64..30), 0..5)
            .prop_map(|ts| Surd::from_terms(ts.into_iter().map(|(n, a, b)| (n, Rational::new(a, b)))))
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(x in any_surd()) {
            prop_assert_eq!(x.to_string().parse::<Surd>().unwrap(), x.clone());
            let js = serde_json::to_string(&x).unwrap();
            prop_assert_eq!(Surd::from_json_str(&js).unwrap(), x);
        }

        #[test]
        fn parser_never_panics(s in "\\PC{0,40}") {
            let _ = s.parse::<Surd>();
            let _ = Surd::from_json_str(&s);
        }
    }
}
