//! Exact arithmetic substrate: rationals, dense polynomials, rational
//! functions, quasi-polynomials and Sylvester resultants.

pub mod polynomial;
pub mod quasi;
pub mod rational;
pub mod rational_function;
pub mod resultant;

pub use polynomial::Polynomial;
pub use quasi::{DifferenceOpResult, QuasiPolynomial, QuasiRational};
pub use rational::{int, parse_rational, pochhammer, pochhammer_signed, rat, Rational};
pub use rational_function::RationalFunction;
pub use resultant::{resultant, sylvester_matrix};

/// `P(x + k)`.
pub fn poly_shift(p: &Polynomial, k: i64) -> Polynomial {
    p.shift(k)
}

/// `A / B` when exact, otherwise `NotDivisible` with the remainder.
pub fn poly_divide_exact(a: &Polynomial, b: &Polynomial) -> crate::Result<Polynomial> {
    a.divide_exact(b)
}
