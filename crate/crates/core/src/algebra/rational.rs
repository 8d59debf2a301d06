//! Exact rationals and the helpers shared by every other module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or `"a"`. Decimal and exponent forms are rejected so that
/// every parameter entering the library is exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// `base^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    let b = if e < 0 { base.recip() } else { base.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Rising factorial `(a)_n = a(a+1)...(a+n-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Pochhammer symbol continued to negative lengths by `(a)_{-k} = 1/(a-k)_k`.
/// Returns `None` when that continuation divides by zero.
pub fn pochhammer_signed(a: &Rational, n: i64) -> Option<Rational> {
    if n >= 0 {
        return Some(pochhammer(a, n as usize));
    }
    let k = n.unsigned_abs() as usize;
    let den = pochhammer(&(a - int(k as i64)), k);
    if den.is_zero() {
        None
    } else {
        Some(den.recip())
    }
}

pub fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapter that writes rationals as `"num/den"` strings.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(3), 0), int(1));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn pochhammer_negative_length() {
        // (a)_{-1} = 1/(a-1)
        assert_eq!(pochhammer_signed(&int(5), -1), Some(rat(1, 4)));
        assert_eq!(pochhammer_signed(&int(1), -1), None);
        assert_eq!(pochhammer_signed(&int(4), -2), Some(rat(1, 6)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-5)), "-5");
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow(&int(-1), 0), int(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(factorial(0), int(1));
    }
}
