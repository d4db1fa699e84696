//! String literals for fields, elements and ideals.
//!
//! ```text
//! field    := "Q" | "Q(sqrt," int ")" | "Q(sqrt(" int "))"
//! rational := ["-"] digits ["/" digits]
//! element  := term (("+" | "-") term)*
//! term     := rational | [rational "*"] "w"
//! ideal    := "(" element ("," element)* ")" | [rational "*"] "[" int "," int "," int "]"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{FieldDescriptor, FieldElement};
use super::ideal::FractionalIdeal;
use crate::error::{Error, Result};

fn strip(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn parse_field(s: &str) -> Result<FieldDescriptor> {
    let t = strip(s);
    if t == "Q" || t == "QQ" {
        return Ok(FieldDescriptor::rational());
    }
    let inner = t
        .strip_prefix("Q(sqrt,")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")))
        .ok_or_else(|| Error::Parse(format!("unrecognized field literal {s:?}")))?;
    let d: i64 = inner
        .parse()
        .map_err(|_| Error::Parse(format!("bad discriminant parameter in {s:?}")))?;
    FieldDescriptor::quadratic(d)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = strip(s);
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_element(field: FieldDescriptor, s: &str) -> Result<FieldElement> {
    let t = strip(s);
    if t.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = t.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*' && bytes[i - 1] != b'/' {
            terms.push(&t[start..i]);
            start = i;
        }
    }
    terms.push(&t[start..]);
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(r) => (-BigRational::one(), r),
            None => (BigRational::one(), term.strip_prefix('+').unwrap_or(term)),
        };
        if let Some(coef) = body.strip_suffix('w') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { BigRational::one() } else { parse_rational(coef)? };
            b += sign * c;
        } else {
            a += sign * parse_rational(body)?;
        }
    }
    if field.is_rational() && !b.is_zero() {
        return Err(Error::Parse(format!("element {s:?} uses w over Q")));
    }
    Ok(FieldElement::new(a, b))
}

fn split_top_level(s: &str) -> Vec<&str> {
    s.split(',').collect()
}

pub fn parse_ideal(field: FieldDescriptor, s: &str) -> Result<FractionalIdeal> {
    let t = strip(s);
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let gens = split_top_level(inner)
            .into_iter()
            .map(|g| parse_element(field, g))
            .collect::<Result<Vec<_>>>()?;
        return FractionalIdeal::from_generators(field, &gens);
    }
    let (scale, rest) = match t.split_once("*[") {
        Some((q, r)) => (parse_rational(q)?, format!("[{r}")),
        None => (BigRational::one(), t.clone()),
    };
    if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let nums = inner
            .split(',')
            .map(|x| x.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad HNF entry {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let (a, b, c) = match nums.as_slice() {
            [a] if field.is_rational() => (a.clone(), BigInt::zero(), BigInt::one()),
            [a, b, c] => (a.clone(), b.clone(), c.clone()),
            _ => return Err(Error::Parse(format!("HNF literal {s:?} needs three entries"))),
        };
        return FractionalIdeal::from_hnf(field, scale, a, b, c);
    }
    Err(Error::Parse(format!("unrecognized ideal literal {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert!(parse_field("Q").unwrap().is_rational());
        assert_eq!(parse_field("Q(sqrt,-5)").unwrap().d, -5);
        assert_eq!(parse_field("Q(sqrt(5))").unwrap().d, 5);
        assert!(parse_field("Q(sqrt,12)").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn elements_round_trip() {
        let f = parse_field("Q(sqrt,-1)").unwrap();
        for s in ["1/3", "-2+3*w", "1/2-1/4*w", "w", "-w", "0", "5-7/3*w"] {
            let x = parse_element(f, s).unwrap();
            let y = parse_element(f, &x.to_string()).unwrap();
            assert_eq!(x, y, "{s}");
        }
        assert_eq!(parse_element(f, "1+w").unwrap(), FieldElement::from_ints(1, 1));
        assert!(parse_element(parse_field("Q").unwrap(), "w").is_err());
        assert!(parse_element(f, "1/0").is_err());
    }

    #[test]
    fn ideals() {
        let f = parse_field("Q(sqrt,-5)").unwrap();
        let i = parse_ideal(f, "(2, 1+w)").unwrap();
        let j = parse_ideal(f, "[2,1,1]").unwrap();
        assert_eq!(i, j);
        assert_eq!(i.to_string(), "[2,1,1]");
        assert!(parse_ideal(f, "[2,0,1]").is_err());
        let q = parse_field("Q").unwrap();
        assert_eq!(parse_ideal(q, "1/3*[1]").unwrap(), parse_ideal(q, "(1/3)").unwrap());
        assert_eq!(parse_ideal(f, "(0)"), Err(Error::ZeroIdeal));
    }
}
