use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Canonical text form: `p/q` in lowest terms with `q > 1`, or just `p` for integers.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the canonical text form, rejecting anything [`format_rational`]
/// would not produce (`2/4`, `3/1`, `1/-2`, `+1`, whitespace).
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::schema("rational", format!("non-canonical rational {s:?}"));
    let parse_int = |t: &str, allow_sign: bool| -> Result<BigInt> {
        let digits = t.strip_prefix('-').filter(|_| allow_sign).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(bad());
        }
        let v: BigInt = t.parse().map_err(|_| bad())?;
        if t.starts_with('-') && v.is_zero() {
            return Err(bad());
        }
        Ok(v)
    };
    match s.split_once('/') {
        None => Ok(Q::from_integer(parse_int(s, true)?)),
        Some((n, d)) => {
            let n = parse_int(n, true)?;
            let d = parse_int(d, false)?;
            if !d.is_positive() || d.is_one() {
                return Err(bad());
            }
            let q = Q::new(n.clone(), d.clone());
            if q.numer() != &n || q.denom() != &d {
                return Err(bad());
            }
            Ok(q)
        }
    }
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}
