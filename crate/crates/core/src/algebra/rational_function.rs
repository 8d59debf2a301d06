use std::fmt;

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Quotient of polynomials kept in canonical form: `gcd(num, den) = 1` and
/// `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let inv = den.leading_coefficient().recip();
            return Ok(Self { num: num.scale(&inv), den: Polynomial::one() });
        }
        // Most operator outputs divide exactly; try that before a full gcd.
        let (q, r) = num.div_rem(&den);
        if r.is_zero() {
            return Ok(Self { num: q, den: Polynomial::one() });
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading_coefficient().recip();
        Ok(Self { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        Self { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn to_polynomial(&self) -> Option<Polynomial> {
        self.is_polynomial().then(|| self.num.clone())
    }

    /// `f(x + k)`.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.shift(k) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("denominator stays nonzero")
    }

    pub fn div_poly(&self, p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(self.num.clone(), &self.den * p)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).expect("nonzero");
        }
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero")
    }

    /// `None` when the denominator vanishes at the point.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        (!d.is_zero()).then(|| self.num.eval(at) / d)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(num: Polynomial) -> Self {
        Self { num, den: Polynomial::one() }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
