//! Recurrence relations `q_pi K^_n = sum_l c_{n,l} K^_l`: the minimal
//! multiplier, direct extraction through `B`, and the tridiagonal-symbol
//! method.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::serde_string;
use crate::algebra::{int, Polynomial, Rational};
use crate::darboux::{backward, eta, nu, nu_tilde, DarbouxSeed};
use crate::error::{Error, Result};
use crate::krawtchouk::{eigen_pair, kraw_shifted, Family, KrawtchoukParams};
use crate::xkrawtchouk::{casorati_pair, xk_member};

use super::orthogonality::seed_poly;

/// Coefficients `c_{n,l}` keyed by the absolute index `l`.
pub type Coefficients = BTreeMap<i64, Rational>;

/// `K_{d+1}` multiplier of lowest degree for each type.
pub fn lowest_q(family: Family, d: usize, params: &KrawtchoukParams) -> Polynomial {
    let p = params.p();
    let q = Rational::one() - p;
    let big_n = params.big_n();
    match family {
        Family::One => kraw_shifted(d + 1, p, big_n + 1, 1),
        Family::Two => kraw_shifted(d + 1, p, -big_n - 1, -big_n),
        Family::Three => kraw_shifted(d + 1, &q, big_n + 1, 1),
        Family::Four => kraw_shifted(d + 1, &q, -big_n - 1, -big_n),
    }
}

/// `pi(x) = p(N-x) eta(x) / (xi(x) P_d(x)) * (q(x) - q(x-1))`; the
/// geometric parts of `eta` and `xi` cancel. `NotInSpan` when the quotient is
/// not a polynomial.
pub fn pi_polynomial(family: Family, d: usize, params: &KrawtchoukParams, q: &Polynomial) -> Result<Polynomial> {
    let p = params.p();
    let big_n = params.big_n();
    let e = eta(family, params);
    let xi = eigen_pair(family, 0, params).xi_poly;
    let up = Polynomial::new(vec![p * int(big_n), -p.clone()]);
    let dq = q - &q.shift(-1);
    let num = &(&up * e.poly()) * &dq;
    let den = &xi * &seed_poly(family, d, p, big_n);
    num.divide_exact(&den)
        .map_err(|_| Error::NotInSpan(format!("pi(x) is not a polynomial for q = {q}")))
}

/// The multiplier `q_pi` of degree `d+1`, checked against the `pi` condition.
pub fn minimal_q_pi(family: Family, d: usize, params: &KrawtchoukParams) -> Result<Polynomial> {
    let q = lowest_q(family, d, params);
    pi_polynomial(family, d, params, &q)?;
    Ok(q)
}

/// `x K_k = K_{k+1} + b_k K_k + u_k K_{k-1}`.
pub fn basis_x(k: i64, p: &Rational, big_n: i64) -> (Rational, Rational) {
    let kq = int(k);
    let q = Rational::one() - p;
    let b = p * int(big_n - k) + &kq * &q;
    let u = int(big_n + 1 - k) * &kq * p * &q;
    (b, u)
}

/// Coefficients of `r` in the monic basis `K_l(x; p, N)` by leading-term
/// elimination.
pub fn expand_in_k(r: &Polynomial, p: &Rational, big_n: i64) -> Coefficients {
    let mut rest = r.clone();
    let mut out = Coefficients::new();
    while let Some(deg) = rest.degree() {
        let c = rest.leading_coefficient();
        rest = &rest - &kraw_shifted(deg, p, big_n, 0).scale(&c);
        out.insert(deg as i64, c);
    }
    out
}

/// Index whose `nu~` vanishes (`B` kills that member), if any.
fn silent_index(family: Family, d: usize, big_n: i64) -> Option<i64> {
    match family {
        Family::Three => Some(big_n - d as i64),
        Family::Four => Some(-(d as i64) - 1),
        _ => None,
    }
}

/// `c_{n,l}` by expanding `B[q K^_n]` in the `K` basis and dividing by `nu~_l`;
/// the coefficient at the index `B` kills is recovered from the residual.
/// The identity is asserted before returning.
pub fn recurrence_coefficients(
    family: Family,
    d: usize,
    n: i64,
    params: &KrawtchoukParams,
    q_pi: Option<&Polynomial>,
) -> Result<Coefficients> {
    let q = match q_pi {
        Some(q) => {
            pi_polynomial(family, d, params, q)?;
            q.clone()
        }
        None => minimal_q_pi(family, d, params)?,
    };
    let p = params.p();
    let big_n = params.big_n();
    let di = d as i64;
    let seed = DarbouxSeed::new(family, d, params)?;
    let kn = xk_member(family, d, n, params)?.poly;
    let product = &q * &kn;
    let image = backward(&seed, &product)
        .to_polynomial()
        .ok_or_else(|| Error::NotInSpan(format!("B[q K^_{n}] is not a polynomial")))?;

    let mut coeffs = Coefficients::new();
    for (l, v) in expand_in_k(&image, p, big_n) {
        let nt = nu_tilde(family, di, l, big_n);
        let skip = nt == 0 || (family == Family::One && l == di);
        if skip {
            if !v.is_zero() {
                return Err(Error::NotInSpan(format!("B[q K^_{n}] has a K_{l} component {v}")));
            }
            continue;
        }
        coeffs.insert(l, v / int(nt));
    }

    let mut residual = product;
    for (&l, c) in &coeffs {
        residual = &residual - &xk_member(family, d, l, params)?.poly.scale(c);
    }
    if !residual.is_zero() {
        let z = silent_index(family, d, big_n)
            .ok_or_else(|| Error::Invariant(format!("residual {residual} for type {family}")))?;
        let kz = xk_member(family, d, z, params)?.poly;
        let c = residual.divide_exact(&kz)?;
        if !c.is_constant() {
            return Err(Error::Invariant(format!("residual {residual} is not a multiple of K^_{z}")));
        }
        coeffs.insert(z, c.coeff(0));
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(coeffs)
}

/// Applies `Q(X)` to a vector in the basis `e_k`.
fn apply_symbol(q: &Polynomial, v: &Coefficients, p: &Rational, big_n: i64) -> Coefficients {
    let times_x = |w: &Coefficients| -> Coefficients {
        let mut out = Coefficients::new();
        for (&k, c) in w {
            let (b, u) = basis_x(k, p, big_n);
            *out.entry(k + 1).or_insert_with(Rational::zero) += c;
            *out.entry(k).or_insert_with(Rational::zero) += c * b;
            if !u.is_zero() {
                *out.entry(k - 1).or_insert_with(Rational::zero) += c * u;
            }
        }
        out
    };
    let mut acc = Coefficients::new();
    for c in q.coeffs().iter().rev() {
        acc = times_x(&acc);
        for (&k, a) in v {
            *acc.entry(k).or_insert_with(Rational::zero) += c * a;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// `c^_{n,l}` from the identity
/// `B[q K^_n] = pi K^_n + nu~_n q(x-1) K_n`, with `pi K^_n` written as
/// `Q1(x) (x-N) K_n(x+1) + Q2(x) K_n(x)` and multiplication by `x` replaced
/// by the tridiagonal symbol `X`. The index `B` kills is not recovered.
pub fn recurrence_coefficients_operator_method(
    family: Family,
    d: usize,
    n: i64,
    params: &KrawtchoukParams,
    q_pi: Option<&Polynomial>,
) -> Result<Coefficients> {
    let p = params.p();
    let big_n = params.big_n();
    let di = d as i64;
    let excluded = (family == Family::Two && n == big_n + di + 1) || (family == Family::Four && n == -di - 1);
    if excluded {
        return Err(Error::ExcludedIndex { j: family.index(), n });
    }
    let v = nu(family, di, n, big_n);
    if v == 0 || n < 0 {
        return Err(Error::DegenerateNu { j: family.index(), d: d as u32, n });
    }
    let q = match q_pi {
        Some(q) => q.clone(),
        None => minimal_q_pi(family, d, params)?,
    };
    let pi = pi_polynomial(family, d, params, &q)?;
    let (a, b) = casorati_pair(family, d, p, big_n);
    let inv_nu = int(v).recip();
    let q1 = (&pi * &a).divide_exact(&Polynomial::linear(int(-big_n)))?.scale(&inv_nu);
    let q2 = (&pi * &b).scale(&inv_nu);

    let one_minus_p = Rational::one() - p;
    let mut shifted = Coefficients::new();
    shifted.insert(n + 1, Rational::one());
    shifted.insert(n, int(2 * n - big_n) * &one_minus_p);
    if n > 0 {
        shifted.insert(n - 1, int(n * (n - big_n - 1)) * &one_minus_p * &one_minus_p);
    }
    let mut unit = Coefficients::new();
    unit.insert(n, Rational::one());
    let nt_n = int(nu_tilde(family, di, n, big_n));

    let mut total = apply_symbol(&q1, &shifted, p, big_n);
    let rest = apply_symbol(&(&q2 + &q.shift(-1).scale(&nt_n)), &unit, p, big_n);
    for (k, c) in rest {
        *total.entry(k).or_insert_with(Rational::zero) += c;
    }

    let mut out = Coefficients::new();
    for (l, c) in total {
        let nt = nu_tilde(family, di, l, big_n);
        if c.is_zero() || nt == 0 || (family == Family::One && l == di) {
            continue;
        }
        out.insert(l, c / int(nt));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientRow {
    pub n: i64,
    pub ell: i64,
    #[serde(with = "serde_string")]
    pub value: Rational,
}

/// Multiplier, `pi` and the coefficient table for a list of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceData {
    pub j: Family,
    pub d: usize,
    pub q_pi: Polynomial,
    pub pi: Polynomial,
    pub rows: Vec<CoefficientRow>,
}

impl RecurrenceData {
    pub fn build(
        family: Family,
        d: usize,
        params: &KrawtchoukParams,
        ns: impl IntoIterator<Item = i64>,
        q_pi: Option<&Polynomial>,
    ) -> Result<Self> {
        let q = match q_pi {
            Some(q) => q.clone(),
            None => minimal_q_pi(family, d, params)?,
        };
        let pi = pi_polynomial(family, d, params, &q)?;
        let mut rows = Vec::new();
        for n in ns {
            for (ell, value) in recurrence_coefficients(family, d, n, params, Some(&q))? {
                rows.push(CoefficientRow { n, ell, value });
            }
        }
        Ok(Self { j: family, d, q_pi: q, pi, rows })
    }

    /// `j,d,n,ell,value` with a header row; rationals as bare `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,d,n,ell,value\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", self.j, self.d, r.n, r.ell, r.value);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn params(p: Rational, n: i64) -> KrawtchoukParams {
        KrawtchoukParams::new(p, n).unwrap()
    }

    #[test]
    fn lowest_multipliers() {
        let pr = params(rat(1, 2), 2);
        assert_eq!(minimal_q_pi(Family::One, 0, &pr).unwrap(), Polynomial::new(vec![rat(-1, 2), int(1)]));
        let pr = params(rat(1, 3), 4);
        for family in Family::ALL {
            for d in 0..=3 {
                assert!(minimal_q_pi(family, d, &pr).is_ok(), "{family} {d}");
            }
        }
        assert!(pi_polynomial(Family::One, 2, &pr, &Polynomial::from_ints(&[0, 0, 1])).is_err());
    }

    #[test]
    fn expansion_round_trip() {
        let p = rat(2, 5);
        let r = &kraw_shifted(3, &p, 4, 0).scale(&int(2)) + &kraw_shifted(1, &p, 4, 0);
        let c = expand_in_k(&r, &p, 4);
        assert_eq!(c.get(&3), Some(&int(2)));
        assert_eq!(c.get(&1), Some(&int(1)));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn direct_and_operator_methods_agree() {
        let pr = params(rat(1, 3), 4);
        for family in Family::ALL {
            for d in 0..=2 {
                let top = pr.big_n() + d as i64 + 2;
                for n in -(d as i64) - 1..=top {
                    let Ok(direct) = recurrence_coefficients(family, d, n, &pr, None) else {
                        continue;
                    };
                    assert_eq!(direct.keys().next_back().map(|&l| l - n), Some(d as i64 + 1));
                    assert_eq!(direct.values().next_back(), Some(&int(1)));
                    let Ok(op) = recurrence_coefficients_operator_method(family, d, n, &pr, None) else {
                        continue;
                    };
                    let mut expected = direct.clone();
                    if let Some(z) = silent_index(family, d, pr.big_n()) {
                        expected.remove(&z);
                    }
                    assert_eq!(op, expected, "{family} {d} {n}");
                }
            }
        }
    }

    #[test]
    fn excluded_indices() {
        let pr = params(rat(1, 3), 3);
        assert!(matches!(
            recurrence_coefficients_operator_method(Family::Two, 1, 5, &pr, None),
            Err(Error::ExcludedIndex { j: 2, n: 5 })
        ));
        assert!(recurrence_coefficients_operator_method(Family::Two, 1, 3, &pr, None).is_ok());
        assert!(matches!(
            recurrence_coefficients_operator_method(Family::Four, 1, -2, &pr, None),
            Err(Error::ExcludedIndex { .. })
        ));
    }

    #[test]
    fn type4_low_members_skip_the_special_index() {
        let pr = params(rat(3, 5), 4);
        let d = 1usize;
        for n in 0..=4 {
            let c = recurrence_coefficients(Family::Four, d, n, &pr, None).unwrap();
            if n > 0 {
                assert!(!c.contains_key(&-2), "n = {n}: {c:?}");
            }
        }
    }

    #[test]
    fn csv_has_header() {
        let pr = params(rat(1, 2), 3);
        let data = RecurrenceData::build(Family::One, 0, &pr, 1..=2, None).unwrap();
        let csv = data.to_csv();
        assert!(csv.starts_with("j,d,n,ell,value\n"));
        assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 5));
    }
}
