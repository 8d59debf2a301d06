//! Sylvester-matrix resultants, evaluated with fraction-free (Bareiss)
//! elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// f's coefficients followed by m shifted rows of g's, highest power first.
pub fn sylvester_matrix(f: &Polynomial, g: &Polynomial) -> Result<Vec<Vec<Rational>>> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    let mut push_rows = |p: &Polynomial, deg: usize, count: usize| {
        for shift in 0..count {
            let mut row = vec![Rational::zero(); size];
            for k in 0..=deg {
                row[shift + k] = p.coeff(deg - k);
            }
            rows.push(row);
        }
    };
    push_rows(f, m, n);
    push_rows(g, n, m);
    Ok(rows)
}

/// `Res(f, g) = lc(f)^n lc(g)^m prod (alpha_i - beta_j)`, the determinant of
/// the Sylvester matrix.
pub fn resultant(f: &Polynomial, g: &Polynomial) -> Result<Rational> {
    let matrix = sylvester_matrix(f, g)?;
    // Clear denominators row by row: every row is a shifted copy of f or g.
    let mut scale = Rational::one();
    let int_rows: Vec<Vec<BigInt>> = matrix
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= Rational::from_integer(l.clone());
            row.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    Ok(Rational::from_integer(bareiss_determinant(int_rows)) / scale)
}

/// Determinant of a square integer matrix by Bareiss elimination with row
/// pivoting. Every intermediate division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
