//! Exact rational scalars.
//!
//! All coordinates in this crate are arbitrary-precision rationals, so flat
//! membership and general position are decided by exact equality.
//! `num_rational` keeps values in lowest terms with a positive denominator,
//! and its `Display` matches the wire format: `p/q`, with `/q` omitted when
//! the denominator is 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Scalar from a fraction; panics on a zero denominator.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Scalar from a usize count (counts show up in threshold comparisons).
pub fn count(n: usize) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q`, or a decimal literal like `-0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let malformed = || Error::MalformedRational(s.to_string());
    if s.is_empty() {
        return Err(malformed());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| malformed())?;
        let den: BigInt = den.trim().parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(malformed());
        }
        return Ok(Scalar::new(num, den));
    }
    if let Some((whole, fract)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| malformed())?
        };
        if fract.is_empty() || !fract.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let digits: BigInt = fract.parse().map_err(|_| malformed())?;
        let scale = BigInt::from(10u32).pow(fract.len() as u32);
        let fract_part = Scalar::new(digits, scale);
        let whole_part = Scalar::from_integer(whole);
        return Ok(if negative {
            whole_part - fract_part
        } else {
            whole_part + fract_part
        });
    }
    let n: BigInt = s.parse().map_err(|_| malformed())?;
    Ok(Scalar::from_integer(n))
}

/// `base^exp` for a usize count, as an exact rational.
pub fn count_pow(base: usize, exp: usize) -> Scalar {
    let mut acc = BigInt::from(1u32);
    for _ in 0..exp {
        acc *= BigInt::from(base);
    }
    Scalar::from_integer(acc)
}

/// Serde adapter: rationals on the wire are `p/q` strings.
pub mod serde_string {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Scalar};

    pub fn serialize<S: Serializer>(
        v: &Scalar,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Binomial coefficient as an exact usize (desk scale).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3", "22/7"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("1/-2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("-6/-4").unwrap(), frac(3, 2));
    }

    #[test]
    fn parse_decimals() {
        assert_eq!(parse_rational("0.8").unwrap(), frac(4, 5));
        assert_eq!(parse_rational("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_rational("2.5").unwrap(), frac(5, 2));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1.2.3", "1/", "0x2"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
