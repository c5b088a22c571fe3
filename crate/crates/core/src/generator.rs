//! Generator labels for the current and Virasoro algebras and their text and
//! JSON forms.
//!
//! Descriptor grammar (keys may appear in any order):
//!
//! ```text
//! T:a=1,m=2            current on the circle
//! T:a=1,m=2,n=-1       current on the torus
//! T:a=1,l=5,m=-3       current on the sphere
//! H:i=1,…  E:alpha=[1,-1],…   Cartan-Weyl currents with the same mode keys
//! L:m=3  L:m=1,n=2  L:l=2,m=1  Virasoro generators
//! d d1 d2 k k1 k2 c    gradings and central elements
//! ```

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::base::{FiniteGen, Root};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{ComplexSurd, Surd};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GenId {
    Circle { x: FiniteGen, m: i32 },
    Torus { x: FiniteGen, m: i32, n: i32 },
    Sphere { x: FiniteGen, l: u32, m: i32 },
    CircleL { m: i32 },
    TorusL { m: i32, n: i32 },
    SphereL { l: u32, m: i32 },
    D,
    D1,
    D2,
    K,
    K1,
    K2,
    C,
}

impl GenId {
    pub fn torus_t(a: u8, m: i32, n: i32) -> GenId {
        GenId::Torus { x: FiniteGen::T(a), m, n }
    }

    pub fn sphere_t(a: u8, l: u32, m: i32) -> GenId {
        GenId::Sphere { x: FiniteGen::T(a), l, m }
    }

    pub fn circle_t(a: u8, m: i32) -> GenId {
        GenId::Circle { x: FiniteGen::T(a), m }
    }

    pub fn is_central(&self) -> bool {
        matches!(self, GenId::K | GenId::K1 | GenId::K2 | GenId::C)
    }

    pub fn is_grading(&self) -> bool {
        matches!(self, GenId::D | GenId::D1 | GenId::D2)
    }

    /// Finite-algebra part of a current.
    pub fn finite(&self) -> Option<FiniteGen> {
        match self {
            GenId::Circle { x, .. } | GenId::Torus { x, .. } | GenId::Sphere { x, .. } => Some(*x),
            _ => None,
        }
    }

    /// Same current with another finite part.
    pub fn with_finite(&self, y: FiniteGen) -> GenId {
        match *self {
            GenId::Circle { m, .. } => GenId::Circle { x: y, m },
            GenId::Torus { m, n, .. } => GenId::Torus { x: y, m, n },
            GenId::Sphere { l, m, .. } => GenId::Sphere { x: y, l, m },
            other => other,
        }
    }

    pub fn is_cartan_weyl(&self) -> bool {
        self.finite().is_some_and(|x| x.is_cartan_weyl())
    }
}

fn write_modes(f: &mut fmt::Formatter<'_>, g: &GenId) -> fmt::Result {
    match g {
        GenId::Circle { m, .. } | GenId::CircleL { m } => write!(f, "m={m}"),
        GenId::Torus { m, n, .. } | GenId::TorusL { m, n } => write!(f, "m={m},n={n}"),
        GenId::Sphere { l, m, .. } | GenId::SphereL { l, m } => write!(f, "l={l},m={m}"),
        _ => Ok(()),
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = match self {
            GenId::D => Some("d"),
            GenId::D1 => Some("d1"),
            GenId::D2 => Some("d2"),
            GenId::K => Some("k"),
            GenId::K1 => Some("k1"),
            GenId::K2 => Some("k2"),
            GenId::C => Some("c"),
            _ => None,
        };
        if let Some(p) = plain {
            return f.write_str(p);
        }
        match self.finite() {
            Some(FiniteGen::T(a)) => write!(f, "T:a={a},")?,
            Some(FiniteGen::H(i)) => write!(f, "H:i={i},")?,
            Some(FiniteGen::E(r)) => write!(f, "E:alpha={r},")?,
            None => f.write_str("L:")?,
        }
        write_modes(f, self)
    }
}

fn desc_err(s: &str, msg: impl Into<String>) -> Error {
    Error::Descriptor(s.to_string(), msg.into())
}

/// Splits `a=1,alpha=[1,-1],m=2` at commas outside brackets.
fn split_fields(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_root(s: &str, v: &str) -> Result<Root> {
    let inner = v
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| desc_err(s, "alpha must look like [1,-1]"))?;
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| desc_err(s, format!("bad root coordinate {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Root::from_coords(&coords).map_err(|e| desc_err(s, e.to_string()))
}

impl FromStr for GenId {
    type Err = Error;

    fn from_str(raw: &str) -> Result<GenId> {
        let s = raw.trim();
        match s {
            "d" => return Ok(GenId::D),
            "d1" => return Ok(GenId::D1),
            "d2" => return Ok(GenId::D2),
            "k" => return Ok(GenId::K),
            "k1" => return Ok(GenId::K1),
            "k2" => return Ok(GenId::K2),
            "c" => return Ok(GenId::C),
            _ => {}
        }
        let (kind, rest) = s.split_once(':').ok_or_else(|| desc_err(raw, "expected KIND:key=value,…"))?;
        let mut a = None;
        let mut i = None;
        let mut alpha = None;
        let mut l = None;
        let mut m = None;
        let mut n = None;
        for field in split_fields(rest) {
            let (key, value) =
                field.split_once('=').ok_or_else(|| desc_err(raw, format!("field {field:?} lacks '='")))?;
            let key = key.trim();
            let int = || value.trim().parse::<i64>().map_err(|_| desc_err(raw, format!("bad integer {value:?}")));
            let slot = match key {
                "a" => &mut a,
                "i" => &mut i,
                "l" => &mut l,
                "m" => &mut m,
                "n" => &mut n,
                "alpha" => {
                    if alpha.replace(parse_root(raw, value)?).is_some() {
                        return Err(desc_err(raw, "repeated key alpha"));
                    }
                    continue;
                }
                _ => return Err(desc_err(raw, format!("unknown key {key:?}"))),
            };
            if slot.replace(int()?).is_some() {
                return Err(desc_err(raw, format!("repeated key {key}")));
            }
        }
        let small = |v: i64, what: &str| -> Result<i32> {
            i32::try_from(v)
                .ok()
                .filter(|x| x.unsigned_abs() <= 1 << 20)
                .ok_or_else(|| desc_err(raw, format!("{what} = {v} out of range")))
        };
        let index = |v: i64, what: &str| -> Result<u8> {
            u8::try_from(v).ok().filter(|x| *x >= 1).ok_or_else(|| desc_err(raw, format!("{what} = {v} out of range")))
        };
        let finite = match kind.trim() {
            "T" if i.is_none() && alpha.is_none() => {
                Some(FiniteGen::T(index(a.ok_or_else(|| desc_err(raw, "missing a"))?, "a")?))
            }
            "H" if a.is_none() && alpha.is_none() => {
                Some(FiniteGen::H(index(i.ok_or_else(|| desc_err(raw, "missing i"))?, "i")?))
            }
            "E" if a.is_none() && i.is_none() => {
                let r = alpha.ok_or_else(|| desc_err(raw, "missing alpha"))?;
                if r.is_zero() {
                    return Err(desc_err(raw, "alpha must be non-zero"));
                }
                Some(FiniteGen::E(r))
            }
            "L" if a.is_none() && i.is_none() && alpha.is_none() => None,
            "T" | "H" | "E" | "L" => return Err(desc_err(raw, "keys do not match the generator kind")),
            other => return Err(desc_err(raw, format!("unknown generator kind {other:?}"))),
        };
        let m = small(m.ok_or_else(|| desc_err(raw, "missing m"))?, "m")?;
        let gen = match (l, n) {
            (Some(_), Some(_)) => return Err(desc_err(raw, "l and n cannot both be given")),
            (Some(l), None) => {
                let l = small(l, "l")?;
                if l < 0 || m.unsigned_abs() > l as u32 {
                    return Err(desc_err(raw, "sphere labels need l >= |m|"));
                }
                let l = l as u32;
                match finite {
                    Some(x) => GenId::Sphere { x, l, m },
                    None => GenId::SphereL { l, m },
                }
            }
            (None, Some(n)) => {
                let n = small(n, "n")?;
                match finite {
                    Some(x) => GenId::Torus { x, m, n },
                    None => GenId::TorusL { m, n },
                }
            }
            (None, None) => match finite {
                Some(x) => GenId::Circle { x, m },
                None => GenId::CircleL { m },
            },
        };
        Ok(gen)
    }
}

/// Splits element text into signed terms at top-level `+`/`-`.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        match ch {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let prev = s[..i].trim_end().as_bytes().last().copied();
                match prev {
                    // sign inside a factor, e.g. m=-3
                    Some(b'=' | b',' | b'*' | b'/') => {}
                    None | Some(b'+' | b'-') => {
                        negative ^= ch == b'-';
                        start = i + 1;
                    }
                    _ => {
                        out.push((negative, s[start..i].trim()));
                        negative = ch == b'-';
                        start = i + 1;
                    }
                }
            }
            _ => {}
        }
        if depth < 0 {
            return Err(desc_err(s, "unbalanced brackets"));
        }
        i += 1;
    }
    if depth != 0 {
        return Err(desc_err(s, "unbalanced brackets"));
    }
    let body = s[start..].trim();
    if body.is_empty() {
        return Err(desc_err(s, "empty term"));
    }
    out.push((negative, body));
    Ok(out)
}

/// Splits a term at top-level `*`.
fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// Parses element text such as `-3*T:a=1,l=5,m=-3` or
/// `i*sqrt(2)*T:a=3,m=0,n=0+k1`. A bare `0` is the zero element.
pub fn parse_element(s: &str) -> Result<Element<GenId>> {
    if s.trim() == "0" {
        return Ok(Element::zero());
    }
    let mut terms = Vec::new();
    for (negative, body) in split_terms(s)? {
        let mut factors = split_factors(body);
        let gen: GenId = factors.pop().expect("at least one factor").parse()?;
        let mut imaginary = false;
        if factors.first() == Some(&"i") {
            imaginary = true;
            factors.remove(0);
        }
        let mut coeff = Surd::one();
        if !factors.is_empty() {
            let text = factors.join("*");
            let text = text.trim();
            let inner = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text);
            coeff = inner.parse::<Surd>()?;
        }
        if negative {
            coeff = -coeff;
        }
        let c = if imaginary { ComplexSurd::imag(coeff) } else { ComplexSurd::real(coeff) };
        terms.push((gen, c));
    }
    Ok(Element::from_terms(terms))
}

/// JSON terms `[{"gen": "...", "i": 0|1, "coeff": {...}}]`, one per non-zero
/// real or imaginary part.
pub fn element_to_json(e: &Element<GenId>) -> Value {
    let mut out = Vec::new();
    for (g, c) in e.terms() {
        for (part, ipow) in [(&c.re, 0), (&c.im, 1)] {
            if !part.is_zero() {
                out.push(json!({"gen": g.to_string(), "i": ipow, "coeff": part.to_json_value()}));
            }
        }
    }
    Value::Array(out)
}

pub fn element_from_json(v: &Value) -> Result<Element<GenId>> {
    let arr = v.as_array().ok_or_else(|| Error::Domain("element JSON must be an array".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let gen: GenId = t
            .get("gen")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Domain("term lacks a \"gen\" string".into()))?
            .parse()?;
        let coeff = Surd::from_json_value(t.get("coeff").ok_or_else(|| Error::Domain("term lacks \"coeff\"".into()))?)?;
        let c = match t.get("i").and_then(Value::as_u64) {
            Some(0) => ComplexSurd::real(coeff),
            Some(1) => ComplexSurd::imag(coeff),
            _ => return Err(Error::Domain("\"i\" must be 0 or 1".into())),
        };
        terms.push((gen, c));
    }
    Ok(Element::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for s in [
            "T:a=1,m=1,n=0",
            "T:a=1,l=5,m=-3",
            "T:a=2,m=-4",
            "H:i=2,m=3,n=2",
            "E:alpha=[1,-1],m=0,n=1",
            "E:alpha=[-1],l=2,m=1",
            "L:m=3",
            "L:m=1,n=2",
            "L:l=0,m=0",
            "d",
            "d2",
            "k1",
            "c",
        ] {
            let g: GenId = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: GenId = "T: m=0 , a=3,n=1".parse().unwrap();
        assert_eq!(g, GenId::torus_t(3, 0, 1));
    }

    #[test]
    fn descriptor_errors() {
        for s in [
            "",
            "T",
            "T:a=0,m=1",
            "T:a=1",
            "T:a=1,l=1,m=2",
            "T:a=1,l=1,n=1,m=0",
            "X:a=1,m=0",
            "E:alpha=[0,0],m=0",
            "T:a=1,a=2,m=0",
            "H:a=1,m=0",
            "T:a=1,m=99999999999",
            "L:l=-1,m=0",
        ] {
            assert!(s.parse::<GenId>().is_err(), "{s}");
        }
    }

    #[test]
    fn element_text() {
        let e = parse_element("-3*T:a=1,l=5,m=-3").unwrap();
        assert_eq!(e.to_string(), "-3*T:a=1,l=5,m=-3");
        let e = parse_element("i*sqrt(2)*T:a=3,m=0,n=0 - k1 + 2/5*sqrt(5)*E:alpha=[1,-1],m=0,n=-1").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(parse_element(&e.to_string()).unwrap(), e);
        let e = parse_element("(1+sqrt(5))*d").unwrap();
        assert_eq!(e.to_string(), "(1+sqrt(5))*d");
        assert!(parse_element("0").unwrap().is_zero());
        assert!(parse_element("T:a=1,m=0+").is_err());
        assert!(parse_element("2*").is_err());
    }

    #[test]
    fn element_json_round_trip() {
        let e = parse_element("i*sqrt(2)*T:a=3,m=0,n=0-k1+(1-sqrt(3))*d1").unwrap();
        let v = element_to_json(&e);
        assert_eq!(v[0]["i"], 1);
        assert_eq!(element_from_json(&v).unwrap(), e);
    }
}
