//! Functions of the form `r^x * P(x)` and `r^x * R(x)` with a constant
//! geometric ratio `r`. Bases are kept symbolic; they multiply under products
//! and must agree under sums.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::polynomial::Polynomial;
use super::rational::{format_rational, pow, Rational};
use super::rational_function::RationalFunction;
use crate::error::{Error, Result};

/// `base^x * poly(x)`. The zero function is normalized to base 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuasiPolynomial {
    #[serde(with = "super::rational::serde_string")]
    base: Rational,
    poly: Polynomial,
}

impl QuasiPolynomial {
    pub fn new(base: Rational, poly: Polynomial) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::ZeroBase);
        }
        if poly.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self { base, poly })
    }

    pub fn zero() -> Self {
        Self { base: Rational::one(), poly: Polynomial::zero() }
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `T^k`: `r^(x+k) P(x+k) = r^x * (r^k P(x+k))`.
    pub fn shift(&self, k: i64) -> Self {
        Self { base: self.base.clone(), poly: self.poly.shift(k).scale(&pow(&self.base, k)) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { base: self.base.clone(), poly: self.poly.scale(c) }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::new(self.base.clone(), &self.poly * p).expect("base is nonzero")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.base * &other.base, &self.poly * &other.poly).expect("bases are nonzero")
    }

    /// Sum of two quasi-polynomials with the same base. The zero function
    /// combines with anything.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.base != other.base {
            return Err(Error::BaseMismatch { left: Box::new(self.base.clone()), right: Box::new(other.base.clone()) });
        }
        Self::new(self.base.clone(), &self.poly + &other.poly)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Value at an integer point.
    pub fn eval(&self, x: i64) -> Rational {
        pow(&self.base, x) * self.poly.eval_int(x)
    }
}

impl From<Polynomial> for QuasiPolynomial {
    fn from(poly: Polynomial) -> Self {
        Self::new(Rational::one(), poly).expect("base 1")
    }
}

impl fmt::Debug for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiPolynomial({self})")
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.is_one() {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "({})^x * ({})", format_rational(&self.base), self.poly)
        }
    }
}

/// `base^x * R(x)` with `R` a rational function. This is the value type
/// returned by the difference operators: it records whether the rational part
/// collapsed to a polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuasiRational {
    base: Rational,
    value: RationalFunction,
}

/// Result of applying a Darboux or Krawtchouk difference operator.
pub type DifferenceOpResult = QuasiRational;

impl QuasiRational {
    pub fn new(base: Rational, value: RationalFunction) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::ZeroBase);
        }
        if value.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self { base, value })
    }

    pub fn zero() -> Self {
        Self { base: Rational::one(), value: RationalFunction::zero() }
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Exactness flag: the rational part is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.value.is_polynomial()
    }

    pub fn to_quasi(&self) -> Option<QuasiPolynomial> {
        let poly = self.value.to_polynomial()?;
        Some(QuasiPolynomial::new(self.base.clone(), poly).expect("base is nonzero"))
    }

    /// The polynomial itself, when the base is 1 and the value is polynomial.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if !self.base.is_one() {
            return None;
        }
        self.value.to_polynomial()
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { base: self.base.clone(), value: self.value.shift(k).scale(&pow(&self.base, k)) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.base.clone(), self.value.scale(c)).expect("base is nonzero")
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::new(self.base.clone(), self.value.mul_poly(p)).expect("base is nonzero")
    }

    pub fn div_poly(&self, p: &Polynomial) -> Result<Self> {
        Self::new(self.base.clone(), self.value.div_poly(p)?)
    }

    /// Multiplies the base by `r` (i.e. multiplies the function by `r^x`).
    pub fn mul_geometric(&self, r: &Rational) -> Result<Self> {
        Self::new(&self.base * r, self.value.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.base != other.base {
            return Err(Error::BaseMismatch { left: Box::new(self.base.clone()), right: Box::new(other.base.clone()) });
        }
        Self::new(self.base.clone(), self.value.add(&other.value))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }
}

impl From<QuasiPolynomial> for QuasiRational {
    fn from(q: QuasiPolynomial) -> Self {
        Self::new(q.base, q.poly.into()).expect("base is nonzero")
    }
}

impl From<Polynomial> for QuasiRational {
    fn from(p: Polynomial) -> Self {
        Self::new(Rational::one(), p.into()).expect("base 1")
    }
}

impl fmt::Debug for QuasiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiRational({self})")
    }
}

impl fmt::Display for QuasiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.is_one() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "({})^x * ({})", format_rational(&self.base), self.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn shift_carries_the_base() {
        // T[2^x (x+1)] = 2^(x+1) (x+2) = 2^x (2x + 4)
        let q = QuasiPolynomial::new(int(2), Polynomial::from_ints(&[1, 1])).unwrap();
        let t = q.shift(1);
        assert_eq!(t.base(), &int(2));
        assert_eq!(t.poly(), &Polynomial::from_ints(&[4, 2]));
        assert_eq!(t.eval(3), q.eval(4));
        assert_eq!(q.shift(-1).eval(2), q.eval(1));
    }

    #[test]
    fn mixed_bases_do_not_add() {
        let a = QuasiPolynomial::new(int(2), Polynomial::one()).unwrap();
        let b = QuasiPolynomial::new(rat(1, 2), Polynomial::one()).unwrap();
        assert!(matches!(a.add(&b), Err(Error::BaseMismatch { .. })));
        assert_eq!(a.add(&QuasiPolynomial::zero()).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn zero_base_rejected() {
        assert_eq!(QuasiPolynomial::new(int(0), Polynomial::one()), Err(Error::ZeroBase));
    }
}
