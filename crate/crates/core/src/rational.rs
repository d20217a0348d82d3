//! Exact rationals and their canonical text form.
//!
//! Text form is `"p/q"` with `q > 0` and `gcd(p, q) = 1`; integers are also
//! written with an explicit denominator (`"3/1"`). Parsing accepts `"p/q"` or
//! a bare integer. Decimal input is rejected so that no rounding ever enters
//! the exact layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

pub fn format(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse(text: &str) -> Result<Q> {
    let err = || Error::ParseRational(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    let parse_int = |s: &str| -> Result<BigInt> {
        let body = s.strip_prefix(['+', '-']).unwrap_or(s);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        s.parse::<BigInt>().map_err(|_| err())
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n.trim())?;
            let d = parse_int(d.trim())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(parse_int(t)?)),
    }
}

/// Comma-separated list of rationals, e.g. `"2,1"` or `"3/2"`.
pub fn parse_list(text: &str) -> Result<Vec<Q>> {
    text.split(',').map(parse).collect()
}

pub fn format_list(xs: &[Q]) -> Vec<String> {
    xs.iter().map(format).collect()
}

pub fn sum<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Q {
    xs.into_iter().fold(Q::zero(), |acc, x| acc + x)
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_format() {
        assert_eq!(format(&q(6, -4)), "-3/2");
        assert_eq!(format(&qi(3)), "3/1");
        assert_eq!(format(&Q::zero()), "0/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("5/2").unwrap(), q(5, 2));
        assert_eq!(parse(" -4/6 ").unwrap(), q(-2, 3));
        assert_eq!(parse("7").unwrap(), qi(7));
        assert_eq!(parse("+7").unwrap(), qi(7));
    }

    #[test]
    fn parse_rejects_decimals_and_garbage() {
        for bad in ["1.5", "1e3", "", "1/0", "a/2", "1//2", "/2", "3/"] {
            assert!(parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn list_roundtrip() {
        let xs = parse_list("2,1,3/2").unwrap();
        assert_eq!(format_list(&xs), vec!["2/1", "1/1", "3/2"]);
    }
}
